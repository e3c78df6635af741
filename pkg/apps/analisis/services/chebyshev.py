"""Servicios de Chebyshev — tabla de verificaciones por grado.

Para cada d del rango: patrón de entrelazado de T_d y T'_d, matriz de
incidencia de Markov, número de crecimiento, modelo lineal a trozos,
identidad del coseno, proyección del círculo (d impar) y número de vueltas
de f^2. d = 1 se informa como no expansivo.
"""

from typing import Any, Dict, List, Optional

from core.chebyshev import (
    chebyshev,
    chebyshev_negado,
    clasificar_mapa_intervalo,
    contar_vueltas,
    verificar_conjugacion_negacion,
    verificar_identidad_coseno,
    verificar_modelo_pl,
    verificar_proyeccion_circulo,
)
from core.parse import parsear_rango
from core.steps import Steps
from core.utils import generador


def _fila(d: int, rng) -> Dict[str, Any]:
    t = clasificar_mapa_intervalo(chebyshev(d))
    tn = clasificar_mapa_intervalo(chebyshev_negado(d))
    return {
        "d": d,
        "patron": t.patron,
        "patron_negado": tn.patron,
        "modelo_negado": tn.modelo,
        "puntos": t.estructura.puntos,
        "balance": t.estructura.balance,
        "incidencia": t.incidencia.matriz,
        "crecimiento": t.crecimiento,
        "crecimiento_negado": tn.crecimiento,
        "expansivo": t.expansivo,
        "irreducible": t.irreducible,
        "error_coseno": verificar_identidad_coseno(d, generador=rng),
        "error_pl": verificar_modelo_pl(d) if d >= 2 else None,
        "error_proyeccion": verificar_proyeccion_circulo(d, generador=rng) if d % 2 else None,
        "error_negacion": verificar_conjugacion_negacion(d),
        "vueltas_f2": contar_vueltas(chebyshev(d), 2),
    }


def tabla_chebyshev(grados: str, semilla: int = 0, steps: Optional[Steps] = None) -> Dict[str, Any]:
    if steps:
        steps.begin("chebyshev")
    try:
        valores = parsear_rango(grados)
        if steps:
            steps.add("parsear grados", {"grados": valores})
        rng = generador(semilla)
        filas: List[Dict[str, Any]] = []
        for d in valores:
            fila = _fila(d, rng)
            filas.append(fila)
            if steps:
                steps.add("verificar grado", {"d": d, "crecimiento": fila["crecimiento"]})
        datos = {
            "filas": filas,
            "no_expansivos": [f["d"] for f in filas if not f["expansivo"]],
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
    "tabla_chebyshev",
]
