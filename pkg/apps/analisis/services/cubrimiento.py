"""Servicios de cubrimientos — jerarquía U_n, axiomas y controles métricos.

Mismo contrato que los demás servicios: {"ok", "datos", "error", "pasos"}.

Con profundidad < 4 la métrica visual, la distorsión, la cuasi-simetría y la
cuasi-autosimilitud se informan como "profundidad_insuficiente" en lugar de
fallar la corrida.
"""

from typing import Any, Dict, Optional

from core.antena import muestrear_centros
from core.cubrimiento import (
    FALLA,
    INSUFICIENTE,
    PASA,
    construir_jerarquia,
    verificar_expansion,
    verificar_grado,
    verificar_irreducibilidad,
)
from core.dinamica import conjunto_julia
from core.errores import ErrorProfundidad
from core.geometria import bola, diametro
from core.metricas import (
    distancia_euclidea,
    estimar_metrica_visual,
    estimar_modulo_qs,
    triples_aleatorios,
    verificar_cuasi_autosimilitud,
    verificar_distorsion,
    verificar_homotecia,
)
from core.parse import parsear_mapa
from core.steps import Steps
from core.utils import generador

from ..configuracion import ConfiguracionEjecucion

TRIPLES_QS = 200
MUESTRAS_IRREDUCIBILIDAD = 3


def _irreducibilidad(mapa, s, rng):
    """n de f^n(B) = s para algunas bolas chicas (radio diam/16) centradas en s."""
    r = diametro(s) / 16
    filas = []
    for x in muestrear_centros(s, MUESTRAS_IRREDUCIBILIDAD, rng):
        n = verificar_irreducibilidad(mapa, s, bola(s, x, r))
        filas.append({"centro": complex(x), "radio": r, "n": n})
    return filas


def _metricos(h, mapa, s, rng, steps):
    try:
        vm = estimar_metrica_visual(h, generador=rng)
    except ErrorProfundidad as e:
        if steps:
            steps.add("métrica visual omitida", {"motivo": str(e)})
        return {
            "metrica_visual": INSUFICIENTE,
            "distorsion": INSUFICIENTE,
            "cuasi_simetria": INSUFICIENTE,
            "cuasi_autosimilitud": INSUFICIENTE,
            "homotecia_visual": INSUFICIENTE,
        }
    if steps:
        steps.add("métrica visual", {"epsilon": vm.epsilon, "C": vm.C, "K": vm.K})
    distorsion = verificar_distorsion(h, vm)
    triples = triples_aleatorios(vm.puntos, TRIPLES_QS, rng)
    qs = estimar_modulo_qs(vm.metrica, distancia_euclidea, triples)
    if steps:
        steps.add("distorsión y cuasi-simetría", {"distorsion": distorsion.veredicto, "qs": qs.veredicto})
    return {
        "metrica_visual": {
            "epsilon": vm.epsilon,
            "C": vm.C,
            "r0": vm.r0,
            "r1": vm.r1,
            "K": vm.K,
            "brecha": vm.brecha,
            "muestras": len(vm.puntos),
        },
        "distorsion": distorsion,
        "cuasi_simetria": qs,
        "cuasi_autosimilitud": verificar_cuasi_autosimilitud(h, vm),
        "homotecia_visual": verificar_homotecia(mapa, s, vm.metrica, generador=rng),
    }


def analizar_cubrimiento(config: ConfiguracionEjecucion, steps: Optional[Steps] = None) -> Dict[str, Any]:
    if steps:
        steps.begin("cubrimiento")
    try:
        mapa = parsear_mapa(config.mapa)
        rng = generador(config.semilla)
        s = conjunto_julia(mapa, config.resolucion, config.max_iter, hilos=config.hilos)
        if steps:
            steps.add("tiempo de escape", {"celdas": s.numero_celdas})
        h = construir_jerarquia(mapa, s, profundidad=config.profundidad, hilos=config.hilos, generador=rng)
        if steps:
            steps.add("jerarquía", {"elementos_por_nivel": [len(n) for n in h.niveles]})
        expansion = verificar_expansion(h)
        grado = verificar_grado(h)
        irreducibilidad = _irreducibilidad(mapa, s, rng)
        if steps:
            steps.add(
                "axiomas",
                {"expansion": expansion.veredicto, "grado": grado.veredicto, "irreducibilidad": [f["n"] for f in irreducibilidad]},
            )
        datos = {
            "continuo": s,
            "mapa": mapa.como_texto(),
            "jerarquia": h.exportar(),
            "elementos_por_nivel": [len(n) for n in h.niveles],
            "expansion": expansion,
            "grado": grado,
            "irreducibilidad": {
                "bolas": irreducibilidad,
                "veredicto": PASA if all(f["n"] is not None for f in irreducibilidad) else FALLA,
            },
            "homotecia": verificar_homotecia(mapa, s, generador=rng),
            **_metricos(h, mapa, s, rng, steps),
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
    "analizar_cubrimiento",
]
