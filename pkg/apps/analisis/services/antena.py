"""Servicios de antenas — escaneo multiescala y dimensión por cajas.

Mismo contrato que los demás servicios: {"ok", "datos", "error", "pasos"}.
"""

from typing import Any, Dict, Optional

from core.antena import (
    cota_azzam,
    dimension_por_cajas,
    escanear_antenas,
    propagar_antena,
    revalidar_certificado,
)
from core.dinamica import conjunto_julia
from core.parse import parsear_mapa
from core.steps import Steps
from core.utils import generador

from ..configuracion import ConfiguracionEjecucion

NIVELES_PROPAGACION = 2
PRESUPUESTO_PROPAGACION = 8


def _propagacion(mapa, certificados, rng):
    """Levanta el árbol del mejor certificado; un fallo numérico se informa, no aborta."""
    if not certificados:
        return None
    mejor = max(certificados, key=lambda c: c.c)
    try:
        return propagar_antena(mapa, mejor.arbol, NIVELES_PROPAGACION, PRESUPUESTO_PROPAGACION, generador=rng)
    except ValueError as e:
        return {"error": str(e)}


def escanear(config: ConfiguracionEjecucion, steps: Optional[Steps] = None, b: Optional[float] = None) -> Dict[str, Any]:
    if steps:
        steps.begin("antena")
    try:
        mapa = parsear_mapa(config.mapa)
        rng = generador(config.semilla)
        s = conjunto_julia(mapa, config.resolucion, config.max_iter, hilos=config.hilos)
        if steps:
            steps.add("tiempo de escape", {"celdas": s.numero_celdas})
        informe = escanear_antenas(
            s,
            n_escalas=config.escalas,
            n_centros=config.centros,
            c_min=config.c_min,
            generador=rng,
            hilos=config.hilos,
        )
        if steps:
            steps.add(
                "escaneo de bolas",
                {"bolas": len(informe.filas), "fallas": len(informe.fallas), "inf_c": informe.inf_global},
            )
        revalidaciones = [revalidar_certificado(c, s) for c in informe.certificados]
        invalidos = sum(1 for r in revalidaciones if not r["valido"])
        if steps:
            steps.add("revalidar certificados", {"certificados": len(revalidaciones), "invalidos": invalidos})
        if b is not None and informe.cota is not None:
            informe.cota = cota_azzam(informe.cota.c, b)
        datos = {
            "continuo": s,
            "mapa": mapa.como_texto(),
            "informe": informe,
            "certificados_invalidos": invalidos,
            "propagacion": _propagacion(mapa, informe.certificados, rng),
        }
        if steps:
            steps.end({"ok": True})
        return {"ok": True, "datos": datos, "error": None, "pasos": steps.to_list() if steps else []}
    except Exception as e:  # noqa: BLE001
        if steps:
            steps.add("error", {"mensaje": str(e)})
            steps.end({"ok": False})
        return {"ok": False, "datos": {}, "error": str(e), "pasos": steps.to_list() if steps else []}


def estimar_dimension(config: ConfiguracionEjecucion, steps: Optional[Steps] = None) -> Dict[str, Any]:
    if steps:
        steps.begin("dimension")
    try:
        mapa = parsear_mapa(config.mapa)
        s = conjunto_julia(mapa, config.resolucion, config.max_iter, hilos=config.hilos)
        if steps:
            steps.add("tiempo de escape", {"celdas": s.numero_celdas})
        informe = dimension_por_cajas(s)
        if steps:
            steps.add("conteo de cajas", {"lados": len(informe.lados), "adelgazado": informe.adelgazado})
        datos = {"mapa": mapa.como_texto(), "informe": informe}
        if steps:
            steps.end({"ok": True})
        return {"ok": True, "datos": datos, "error": None, "pasos": steps.to_list() if steps else []}
    except Exception as e:  # noqa: BLE001
        if steps:
            steps.add("error", {"mensaje": str(e)})
            steps.end({"ok": False})
        return {"ok": False, "datos": {}, "error": str(e), "pasos": steps.to_list() if steps else []}


__all__ = [
    "escanear",
    "estimar_dimension",
]
