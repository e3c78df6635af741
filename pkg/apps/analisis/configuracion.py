"""Configuración de una corrida de análisis.

Reúne en un dataclass los parámetros que comparten todos los comandos (mapa,
resolución, escaneo, profundidad, tolerancias, salida y semilla).

Precedencia: `settings.ANALISIS` < archivo `--config` (clave=valor) < flags.
Los valores leídos del archivo llegan como texto y se convierten según el
tipo del campo. `validar()` lanza ValueError con mensaje en español.
"""

from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from django.conf import settings

from core.parse import parsear_configuracion, parsear_mapa, parsear_rango
from core.tolerancias import configurar_tolerancias
from core.validate import (
    asegurar_abierto_unitario,
    asegurar_entero_minimo,
    asegurar_positivo,
    asegurar_potencia_de_dos,
)

RESOLUCION_MINIMA = 64


@dataclass(frozen=True)
class ConfiguracionEjecucion:
    mapa: str = "poly: i, 0, 1"
    resolucion: int = 512
    max_iter: int = 200
    escalas: int = 4
    centros: int = 16
    c_min: float = 1e-3
    profundidad: int = 5
    tol_raiz: float = 1e-10
    tol_orbita: float = 1e-9
    tol_geom: float = 1e-6
    salida: str = "salida"
    semilla: int = 0
    hilos: int = 1
    grados: str = "2-8"

    def validar(self) -> "ConfiguracionEjecucion":
        parsear_mapa(self.mapa)
        asegurar_potencia_de_dos(self.resolucion, "resolución")
        asegurar_entero_minimo(self.resolucion, RESOLUCION_MINIMA, "resolución")
        asegurar_entero_minimo(self.max_iter, 1, "max_iter")
        asegurar_entero_minimo(self.escalas, 2, "escalas")
        asegurar_entero_minimo(self.centros, 1, "centros")
        asegurar_abierto_unitario(self.c_min, "c_min")
        asegurar_entero_minimo(self.profundidad, 0, "profundidad")
        for nombre in ("tol_raiz", "tol_orbita", "tol_geom"):
            asegurar_positivo(getattr(self, nombre), nombre)
        asegurar_entero_minimo(self.semilla, 0, "semilla")
        asegurar_entero_minimo(self.hilos, 1, "hilos")
        parsear_rango(self.grados)
        return self

    def aplicar_tolerancias(self):
        configurar_tolerancias(tol_raiz=self.tol_raiz, tol_orbita=self.tol_orbita, tol_geom=self.tol_geom)

    @property
    def directorio(self) -> Path:
        return Path(self.salida)

    def como_dict(self) -> Dict[str, Any]:
        """Eco de la configuración para los informes JSON."""
        return asdict(self)


_TIPOS = {f.name: f.type for f in fields(ConfiguracionEjecucion)}


def _convertir(nombre: str, valor: Any):
    tipo = _TIPOS[nombre]
    if not isinstance(valor, str) or tipo is str:
        return valor
    try:
        if tipo is int:
            return int(valor)
        if tipo is float:
            return float(valor)
    except ValueError as e:
        raise ValueError(f"valor inválido para '{nombre}': '{valor}'") from e
    return valor


def _desde_settings() -> Dict[str, Any]:
    base = getattr(settings, "ANALISIS", {})
    return {clave.lower(): valor for clave, valor in base.items() if clave.lower() in _TIPOS}


def cargar_configuracion(archivo: Optional[str] = None, **sobrescrituras) -> ConfiguracionEjecucion:
    """Combina settings, archivo y flags (los None se ignoran) y valida."""
    valores: Dict[str, Any] = _desde_settings()
    if archivo:
        ruta = Path(archivo)
        if not ruta.is_file():
            raise ValueError(f"no existe el archivo de configuración: {archivo}")
        leidos = parsear_configuracion(ruta.read_text(encoding="utf-8"))
        desconocidas = sorted(set(leidos) - set(_TIPOS))
        if desconocidas:
            raise ValueError(f"claves desconocidas en {ruta.name}: {', '.join(desconocidas)}")
        valores.update(leidos)
    valores.update({k: v for k, v in sobrescrituras.items() if v is not None})
    config = ConfiguracionEjecucion(**{k: _convertir(k, v) for k, v in valores.items()})
    return config.validar()


def con_cambios(config: ConfiguracionEjecucion, **cambios) -> ConfiguracionEjecucion:
    return replace(config, **cambios).validar()


__all__ = [
    "ConfiguracionEjecucion",
    "cargar_configuracion",
    "con_cambios",
]
