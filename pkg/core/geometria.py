"""geometria.py — Geometría y topología de continuos en malla.

Propósito
---------
Medidas métricas (diámetro, redondez, bolas) y la tricotomía topológica
círculo / arco / contiene un Y, con testigo explícito.

API pública
-----------
- diametro(s) -> float
- bola(s, x, r) -> máscara booleana
- redondez(s, region, a) -> float (>= 1)
- clasificar(s, largo_poda=None) -> ClaseTopologica
- extraer_arbol(s, largo_poda=None, esqueleto=None) -> ArbolY | None
- componentes_al_remover(s, x, radio=None) -> int
- recortar(camino, largo) -> np.ndarray

Convenciones
------------
8-conexidad para el conjunto. Las distancias se miden entre centros de celda.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import ndimage
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist

from .errores import ErrorResolucion
from .esqueleto import GrafoEsqueleto, esqueletizar
from .levantamiento import problemas_arbol
from .tipos import ArbolY, ContinuoMalla, Poligonal
from .validate import asegurar_no_vacia, asegurar_positivo

logger = logging.getLogger(__name__)

CIRCULO = "circulo"
ARCO = "arco"
CONTIENE_Y = "contiene_y"
OTRO = "otro"

_OCHO_VECINOS = np.ones((3, 3), dtype=bool)


# ---------------------------------------------------------------------------
# Métrica
# ---------------------------------------------------------------------------

def _como_plano(z):
    return np.column_stack([np.real(z), np.imag(z)])


def diametro_puntos(puntos) -> float:
    """Diámetro de un conjunto finito de puntos complejos (vía envolvente convexa)."""
    z = np.asarray(puntos, dtype=complex).ravel()
    if z.size < 2:
        return 0.0
    xy = _como_plano(z)
    if z.size > 3:
        xy = xy[ConvexHull(xy, qhull_options="QJ").vertices]
    return float(pdist(xy).max())


def diametro(s: ContinuoMalla, mascara=None) -> float:
    """Máxima distancia entre centros de celdas de s (o de la submáscara dada)."""
    return diametro_puntos(s.centros(mascara))


def bola(s: ContinuoMalla, x, r) -> np.ndarray:
    """Celdas de s con centro a distancia <= r de x."""
    asegurar_positivo(r, "radio")
    x = complex(x)
    n, m = s.forma
    fila, col = s.indices_de(x)
    k = int(np.ceil(r / s.ancho)) + 1
    f0, f1 = max(0, fila - k), min(n, fila + k + 1)
    c0, c1 = max(0, col - k), min(m, col + k + 1)
    resultado = np.zeros(s.forma, dtype=bool)
    if f0 >= f1 or c0 >= c1:
        raise ValueError("la bola no corta al continuo")
    filas, cols = np.mgrid[f0:f1, c0:c1]
    centros = s.origen + s.ancho * (cols + 1j * filas)
    resultado[f0:f1, c0:c1] = (np.abs(centros - x) <= r) & s.mascara[f0:f1, c0:c1]
    if not resultado.any():
        raise ValueError("la bola no corta al continuo")
    return resultado


def redondez(s: ContinuoMalla, region: np.ndarray, a) -> float:
    """Radio exterior / radio interior de la región (∩ s) alrededor de a.

    El radio interior es la distancia de a a la celda más cercana de s fuera
    de la región; si no hay ninguna, la región es todo s y vale el exterior.
    """
    a = complex(a)
    dentro = asegurar_no_vacia(np.asarray(region, dtype=bool) & s.mascara, "región")
    exterior = float(np.max(np.abs(s.centros(dentro) - a)))
    fuera = s.mascara & ~dentro
    if fuera.any():
        interior = min(float(np.min(np.abs(s.centros(fuera) - a))), exterior)
    else:
        interior = exterior
    if interior < s.ancho:
        raise ErrorResolucion(
            f"resolución limitada: radio interior {interior:.3g} menor que el ancho de celda {s.ancho:.3g}"
        )
    return max(1.0, exterior / interior)


def componentes_al_remover(s: ContinuoMalla, x, radio=None) -> int:
    """Componentes 8-conexas de s menos el disco de radio `radio` (2 celdas por defecto)."""
    radio = 2.0 * s.ancho if radio is None else radio
    quitar = np.abs(s.malla_completa() - complex(x)) <= radio
    _, n = ndimage.label(s.mascara & ~quitar, structure=_OCHO_VECINOS)
    return int(n)


# ---------------------------------------------------------------------------
# Tricotomía
# ---------------------------------------------------------------------------

@dataclass
class ClaseTopologica:
    tipo: str
    testigo: Optional[object] = None
    esqueleto: dict = field(default_factory=dict)
    componentes_corte: Optional[int] = None


def recortar(camino, largo) -> np.ndarray:
    """Prefijo de la poligonal con longitud de arco `largo`."""
    camino = np.asarray(camino, dtype=complex)
    acumulado = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(camino)))])
    if largo >= acumulado[-1]:
        return camino
    k = int(np.searchsorted(acumulado, largo, side="right"))
    t = (largo - acumulado[k - 1]) / (acumulado[k] - acumulado[k - 1])
    if t == 0:
        return camino[:k]
    return np.append(camino[:k], camino[k - 1] + t * (camino[k] - camino[k - 1]))


def _largo(camino) -> float:
    return float(np.abs(np.diff(camino)).sum())


def ramas_incidentes(esq: GrafoEsqueleto, v):
    """Poligonales que salen de v; un lazo aporta sus dos mitades."""
    ramas = []
    for a, b, k in esq.grafo.edges(v, keys=True):
        camino = esq.camino_desde(a, b, k, v)
        if a == b:
            mitad = _largo(camino) / 2
            ramas.append(recortar(camino, mitad))
            ramas.append(recortar(camino[::-1], mitad))
        else:
            ramas.append(camino)
    return ramas


def _arbol_desde(centro, ramas, largo, tol):
    for _ in range(6):
        try:
            arbol = ArbolY(centro, tuple(Poligonal(recortar(r, largo)) for r in ramas))
        except ValueError:
            return None
        if not problemas_arbol(arbol, tol):
            return arbol
        largo *= 0.8
    return None


def extraer_arbol(s: ContinuoMalla, largo_poda=None, esqueleto: Optional[GrafoEsqueleto] = None, tol=None) -> Optional[ArbolY]:
    """Árbol Y en s: las tres ramas más largas del vértice de ramificación más
    "equilibrado", recortadas a la misma longitud. None si no hay ramificación."""
    esq = esqueletizar(s, largo_poda) if esqueleto is None else esqueleto
    tol = s.ancho * 1e-3 if tol is None else tol
    candidatos = []
    for v in esq.ramificaciones:
        ramas = sorted(ramas_incidentes(esq, v), key=_largo, reverse=True)[:3]
        if len(ramas) == 3:
            candidatos.append((_largo(ramas[2]), v, ramas))
    for largo, v, ramas in sorted(candidatos, key=lambda c: (-c[0], c[1])):
        arbol = _arbol_desde(esq.grafo.nodes[v]["punto"], ramas, largo, tol)
        if arbol is not None:
            return arbol
    return None


def clasificar(s: ContinuoMalla, largo_poda=None) -> ClaseTopologica:
    """Círculo, arco, contiene_y u otro, con el testigo correspondiente."""
    esq = esqueletizar(s, largo_poda)
    resumen = esq.resumen()
    if esq.ramificaciones:
        arbol = extraer_arbol(s, esqueleto=esq)
        if arbol is not None:
            cortes = componentes_al_remover(s, arbol.centro)
            return ClaseTopologica(CONTIENE_Y, arbol, resumen, cortes)
        logger.warning("hay ramificaciones pero ningún árbol Y válido a esta resolución")
        return ClaseTopologica(OTRO, None, resumen)
    aristas = esq.aristas()
    if esq.rango_ciclico == 1 and len(aristas) == 1 and aristas[0][0] == aristas[0][1]:
        return ClaseTopologica(CIRCULO, aristas[0][2], resumen)
    if esq.rango_ciclico == 0 and len(esq.hojas) == 2 and len(aristas) == 1:
        return ClaseTopologica(ARCO, aristas[0][2], resumen)
    return ClaseTopologica(OTRO, None, resumen)


__all__ = [
    "CIRCULO",
    "ARCO",
    "CONTIENE_Y",
    "OTRO",
    "ClaseTopologica",
    "diametro",
    "diametro_puntos",
    "bola",
    "redondez",
    "componentes_al_remover",
    "recortar",
    "ramas_incidentes",
    "extraer_arbol",
    "clasificar",
]
