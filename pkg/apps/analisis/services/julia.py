"""Servicios de dinámica — conjunto de Julia, tricotomía y órbitas críticas.

Contrato básico (por función):
- Entradas: ConfiguracionEjecucion y, opcionalmente, Steps.
- Salida: dict con claves:
    - ok: bool
    - datos: payload con el continuo y sus medidas
    - error: mensaje en español si falla
    - pasos: historial Steps si se pasó un registrador
"""

from typing import Any, Dict, Optional

from core.dinamica import clasificar_orbitas_criticas, conjunto_julia
from core.geometria import ARCO, CIRCULO, clasificar, diametro
from core.parse import parsear_mapa
from core.steps import Steps
from core.utils import generador

from ..configuracion import ConfiguracionEjecucion


def _continuo(config: ConfiguracionEjecucion, steps: Optional[Steps]):
    mapa = parsear_mapa(config.mapa)
    if steps:
        steps.add("parsear mapa", {"mapa": mapa.como_texto(), "grado": mapa.grado})
    s = conjunto_julia(mapa, config.resolucion, config.max_iter, hilos=config.hilos)
    if steps:
        steps.add("tiempo de escape", {"celdas": s.numero_celdas, "componentes": s.componentes})
    return mapa, s


def generar_julia(config: ConfiguracionEjecucion, steps: Optional[Steps] = None) -> Dict[str, Any]:
    if steps:
        steps.begin("julia")
    try:
        mapa, s = _continuo(config, steps)
        diam = diametro(s)
        if steps:
            steps.add("diámetro", {"diametro": diam})
        datos = {
            "continuo": s,
            "mapa": mapa.como_texto(),
            "celdas": s.numero_celdas,
            "ancho": s.ancho,
            "diametro": diam,
            "componentes": s.componentes,
            "conexo": s.componentes == 1,
        }
        if steps:
            steps.end({"ok": True})
        return {"ok": True, "datos": datos, "error": None, "pasos": steps.to_list() if steps else []}
    except Exception as e:  # noqa: BLE001
        if steps:
            steps.add("error", {"mensaje": str(e)})
            steps.end({"ok": False})
        return {"ok": False, "datos": {}, "error": str(e), "pasos": steps.to_list() if steps else []}


def clasificar_continuo(config: ConfiguracionEjecucion, steps: Optional[Steps] = None) -> Dict[str, Any]:
    """Tricotomía círculo / arco / contiene_y y clase dinámica del mapa.

    Si el mapa es candidato semihiperbólico y J es círculo o arco, se informa
    además si es subhiperbólico (`consistencia_subhiperbolica`).
    """
    if steps:
        steps.begin("clasificar")
    try:
        mapa, s = _continuo(config, steps)
        clase = clasificar(s)
        if steps:
            steps.add("esqueleto y tricotomía", {"tipo": clase.tipo, **clase.esqueleto})
        orbitas = clasificar_orbitas_criticas(
            mapa, max_iter=config.max_iter, tol_orbita=config.tol_orbita, generador=generador(config.semilla)
        )
        if steps:
            steps.add("órbitas críticas", {"clases": orbitas.clases})
        consistencia = None
        if orbitas.semihiperbolico_candidato and clase.tipo in (CIRCULO, ARCO):
            consistencia = "subhiperbolico" in orbitas.clases
        datos = {
            "continuo": s,
            "mapa": mapa.como_texto(),
            "clase": clase,
            "orbitas": orbitas,
            "consistencia_subhiperbolica": consistencia,
        }
        if steps:
            steps.end({"ok": True})
        return {"ok": True, "datos": datos, "error": None, "pasos": steps.to_list() if steps else []}
    except Exception as e:  # noqa: BLE001
        if steps:
            steps.add("error", {"mensaje": str(e)})
            steps.end({"ok": False})
        return {"ok": False, "datos": {}, "error": str(e), "pasos": steps.to_list() if steps else []}


__all__ = [
    "generar_julia",
    "clasificar_continuo",
]
