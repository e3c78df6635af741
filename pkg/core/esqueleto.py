"""esqueleto.py — Esqueleto morfológico de un continuo en malla, como grafo.

Propósito
---------
Adelgazar el conjunto a una curva de una celda de ancho (skimage) y
convertirla en un grafo (networkx.MultiGraph) cuyos vértices son puntas,
ramificaciones y celdas aisladas, y cuyas aristas llevan la poligonal
recorrida. Un ciclo puro queda como lazo sobre un único vértice.

Detalles
--------
- Adyacencia m (mixta) entre píxeles del esqueleto: vecinos en cruz
  siempre; diagonales sólo si no comparten un vecino en cruz. Evita
  ramificaciones falsas en las escaleras diagonales.
- Los píxeles de grado >= 3 contiguos forman un único vértice.
- Poda: se quitan iterativamente las aristas punta–ramificación más cortas
  que `largo_poda`; los vértices que quedan con grado 2 se fusionan.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np
from skimage.morphology import skeletonize

from .tipos import ContinuoMalla

logger = logging.getLogger(__name__)

_CRUZ = ((-1, 0), (1, 0), (0, -1), (0, 1))
_DIAGONALES = ((-1, -1), (-1, 1), (1, -1), (1, 1))


@dataclass
class GrafoEsqueleto:
    """Grafo del esqueleto. Nodos con atributo 'punto'; aristas con 'camino' y 'desde'."""

    grafo: nx.MultiGraph
    ancho: float
    esqueleto: np.ndarray

    @property
    def vertices(self) -> List[complex]:
        return [self.grafo.nodes[v]["punto"] for v in self.grafo.nodes]

    @property
    def grados(self) -> Dict[int, int]:
        return dict(self.grafo.degree())

    def aristas(self) -> List[Tuple[int, int, np.ndarray]]:
        return [(u, v, self.camino_desde(u, v, k, u)) for u, v, k in self.grafo.edges(keys=True)]

    def camino_desde(self, u, v, k, origen) -> np.ndarray:
        datos = self.grafo.edges[u, v, k]
        camino = datos["camino"]
        return camino if datos["desde"] == origen else camino[::-1]

    @property
    def hojas(self) -> List[int]:
        return [v for v, g in self.grafo.degree() if g == 1]

    @property
    def ramificaciones(self) -> List[int]:
        return [v for v, g in self.grafo.degree() if g >= 3]

    @property
    def rango_ciclico(self) -> int:
        g = self.grafo
        return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)

    def resumen(self) -> dict:
        return {
            "vertices": self.grafo.number_of_nodes(),
            "aristas": self.grafo.number_of_edges(),
            "hojas": len(self.hojas),
            "ramificaciones": len(self.ramificaciones),
            "rango_ciclico": self.rango_ciclico,
        }


def _largo(camino) -> float:
    return float(np.abs(np.diff(camino)).sum())


def _vecinos_m(pixeles):
    vecinos = {p: [] for p in pixeles}
    for (i, j) in pixeles:
        for di, dj in _CRUZ:
            if (i + di, j + dj) in pixeles:
                vecinos[(i, j)].append((i + di, j + dj))
        for di, dj in _DIAGONALES:
            q = (i + di, j + dj)
            if q in pixeles and (i + di, j) not in pixeles and (i, j + dj) not in pixeles:
                vecinos[(i, j)].append(q)
    return vecinos


def _grafo_pixeles(s: ContinuoMalla, esq: np.ndarray) -> nx.MultiGraph:
    filas, cols = np.nonzero(esq)
    pixeles = set(zip(filas.tolist(), cols.tolist()))
    vecinos = _vecinos_m(pixeles)

    def centro(p):
        return s.origen + s.ancho * (p[1] + 1j * p[0])

    nodos = {p for p, vs in vecinos.items() if len(vs) != 2}
    union = nx.Graph()
    union.add_nodes_from(nodos)
    union.add_edges_from((p, q) for p in nodos if len(vecinos[p]) >= 3 for q in vecinos[p] if q in nodos and len(vecinos[q]) >= 3)

    G = nx.MultiGraph()
    vid = {}
    representante = {}
    for k, grupo in enumerate(sorted(sorted(c) for c in nx.connected_components(union))):
        media = np.mean([centro(p) for p in grupo])
        rep = min(grupo, key=lambda p: (abs(centro(p) - media), p))
        for p in grupo:
            vid[p] = k
        representante[k] = rep
        G.add_node(k, punto=complex(centro(rep)))

    def geometria(camino_pix, u, v):
        puntos = [centro(p) for p in camino_pix]
        if camino_pix[0] != representante[u]:
            puntos.insert(0, G.nodes[u]["punto"])
        if camino_pix[-1] != representante[v]:
            puntos.append(G.nodes[v]["punto"])
        return np.array(puntos, dtype=complex)

    visitadas = set()
    for p in sorted(nodos):
        for q in vecinos[p]:
            par = frozenset((p, q))
            if par in visitadas:
                continue
            visitadas.add(par)
            if q in vid and vid[q] == vid[p]:
                continue
            camino = [p, q]
            previo, actual = p, q
            while actual not in nodos:
                siguiente = next(r for r in vecinos[actual] if r != previo)
                visitadas.add(frozenset((actual, siguiente)))
                camino.append(siguiente)
                previo, actual = actual, siguiente
            u, v = vid[p], vid[actual]
            G.add_edge(u, v, camino=geometria(camino, u, v), desde=u)

    # ciclos puros (sin ningún nodo)
    restantes = {p for p in pixeles if p not in nodos and not any(frozenset((p, q)) in visitadas for q in vecinos[p])}
    while restantes:
        inicio = min(restantes)
        k = G.number_of_nodes()
        G.add_node(k, punto=complex(centro(inicio)))
        representante[k] = inicio
        camino = [inicio]
        previo, actual = None, inicio
        while True:
            siguiente = next(r for r in vecinos[actual] if r != previo)
            restantes.discard(actual)
            camino.append(siguiente)
            if siguiente == inicio:
                break
            previo, actual = actual, siguiente
        G.add_edge(k, k, camino=np.array([centro(p) for p in camino], dtype=complex), desde=k)
    return G


def _fusionar_grado_dos(esq: GrafoEsqueleto) -> bool:
    G = esq.grafo
    for v in sorted(G.nodes):
        if G.degree(v) != 2:
            continue
        incidentes = list(G.edges(v, keys=True))
        if len(incidentes) != 2 or any(a == b for a, b, _ in incidentes):
            continue
        (_, a, ka), (_, b, kb) = incidentes
        primero = esq.camino_desde(v, a, ka, a)
        segundo = esq.camino_desde(v, b, kb, v)
        G.remove_node(v)
        G.add_edge(a, b, camino=np.concatenate([primero, segundo[1:]]), desde=a)
        return True
    return False


def _podar(esq: GrafoEsqueleto, largo_poda: float) -> int:
    G = esq.grafo
    podadas = 0
    cambio = True
    while cambio:
        cambio = False
        for hoja in sorted(esq.hojas):
            (_, otro, k), = G.edges(hoja, keys=True)
            if G.degree(otro) >= 3 and _largo(G.edges[hoja, otro, k]["camino"]) < largo_poda:
                G.remove_node(hoja)
                podadas += 1
                cambio = True
                break
        while _fusionar_grado_dos(esq):
            cambio = True
    return podadas


def esqueletizar(s: ContinuoMalla, largo_poda=None) -> GrafoEsqueleto:
    """Esqueleto podado de s. `largo_poda` por defecto: 4 anchos de celda."""
    largo_poda = 4.0 * s.ancho if largo_poda is None else float(largo_poda)
    esq = skeletonize(s.mascara)
    if not esq.any():
        raise ValueError("esqueleto vacío")
    resultado = GrafoEsqueleto(_grafo_pixeles(s, esq), s.ancho, esq)
    podadas = _podar(resultado, largo_poda)
    resultado.grafo = nx.convert_node_labels_to_integers(resultado.grafo, ordering="sorted", label_attribute="original")
    for u, v, k, datos in resultado.grafo.edges(keys=True, data=True):
        origen = [n for n in (u, v) if resultado.grafo.nodes[n]["original"] == datos["desde"]]
        datos["desde"] = origen[0]
    logger.debug("esqueleto: %s (%d espinas podadas)", resultado.resumen(), podadas)
    return resultado


__all__ = ["GrafoEsqueleto", "esqueletizar"]
