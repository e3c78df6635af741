"""levantamiento.py — Levantamiento de caminos y árboles Y por f y f^n.

Propósito
---------
Dado un camino γ y un punto x0 con f(x0) = γ(0), construir γ̃ con γ̃(0) = x0
y f∘γ̃ = γ (vértice a vértice). Lo mismo para un árbol Y levantado desde una
preimagen de su centro, y para todos los levantamientos por f^n.

Regla numérica
--------------
Continuación por la preimagen más cercana: para pasar de la muestra a a la
muestra b se toma la preimagen de b más cercana al punto levantado actual.
Si la razón (más cercana / segunda más cercana) no es < 1/3, el tramo se
parte por la mitad, hasta 30 veces. Si igual no se decide, la trayectoria
pasa por (o demasiado cerca de) un valor de ramificación: ErrorRamaAmbigua
con el parámetro t ∈ [0, 1] del camino.

Funciones públicas
------------------
- levantar_camino(mapa, gamma, x0, tol=1e-8) -> Poligonal
- levantar_arbol(mapa, arbol, x0, tol=1e-8) -> ArbolY
- iterar_levantamientos(mapa, arbol, n, presupuesto=None, tol=1e-8) -> [ArbolY]
- proyectar_nivel(mapa, levantado, base, n) -> residuo máximo
- problemas_arbol(arbol, tol=None) -> [str]; validar_arbol(arbol, tol=None)
"""

from __future__ import annotations

import logging

import numpy as np

from .dinamica import preimagenes
from .errores import ErrorLevantamiento, ErrorRamaAmbigua
from .tipos import ArbolY, MapaPolinomial, Poligonal
from .tolerancias import tol_geom as _tol_geom
from .utils import generador as _generador

logger = logging.getLogger(__name__)

TOL_LEVANTAMIENTO = 1e-8
RAZON_DECISION = 1.0 / 3.0
MAX_REFINAMIENTOS = 30


# ---------------------------------------------------------------------------
# Caminos
# ---------------------------------------------------------------------------

def _siguiente(mapa, actual, w, rng):
    """(preimagen más cercana, razón cercana/segunda); razón inf si w es valor crítico."""
    candidatos = preimagenes(mapa, w, generador=rng)
    if any(m > 1 for _, m in candidatos):
        return None, np.inf
    puntos = np.array([p for p, _ in candidatos])
    distancias = np.abs(puntos - actual)
    orden = np.argsort(distancias, kind="stable")
    d1, d2 = distancias[orden[0]], distancias[orden[1]]
    return complex(puntos[orden[0]]), (d1 / d2 if d2 > 0 else np.inf)


def _avanzar(mapa, actual, a, b, t0, t1, rng, profundidad=0):
    """Levanta el tramo [a, b] desde `actual`; devuelve el levantado de b."""
    punto, razon = _siguiente(mapa, actual, b, rng)
    if razon < RAZON_DECISION:
        return punto
    if profundidad >= MAX_REFINAMIENTOS:
        raise ErrorRamaAmbigua(
            f"rama ambigua al levantar cerca de t={t1:.6g} (punto {b})", parametro=float(t1)
        )
    medio = (a + b) / 2
    tm = (t0 + t1) / 2
    intermedio = _avanzar(mapa, actual, a, medio, t0, tm, rng, profundidad + 1)
    return _avanzar(mapa, intermedio, medio, b, tm, t1, rng, profundidad + 1)


def levantar_camino(mapa: MapaPolinomial, gamma: Poligonal, x0, tol=TOL_LEVANTAMIENTO, generador=None) -> Poligonal:
    """Levantamiento de `gamma` que empieza en x0 (devuelve un vértice por vértice de gamma)."""
    x0 = complex(x0)
    if abs(mapa(x0) - gamma.inicio) >= tol * max(1.0, abs(gamma.inicio)):
        raise ValueError("x0 no es preimagen del inicio del camino")
    rng = _generador(generador)
    v = gamma.vertices
    n = v.size - 1
    levantado = [x0]
    for k in range(n):
        levantado.append(_avanzar(mapa, levantado[-1], v[k], v[k + 1], k / n, (k + 1) / n, rng))
    resultado = np.array(levantado)
    residuo = np.max(np.abs(mapa(resultado) - v))
    if residuo >= tol * max(1.0, float(np.max(np.abs(v)))):
        raise ValueError(f"el levantamiento no proyecta sobre el camino (residuo {residuo:.3g})")
    return Poligonal(resultado)


# ---------------------------------------------------------------------------
# Validación de árboles Y
# ---------------------------------------------------------------------------

def _cruz(u, v):
    return (np.conj(u) * v).imag


def distancia_punto_segmento(p, a, b):
    ab = b - a
    largo2 = np.abs(ab) ** 2
    t = ((p - a) * np.conj(ab)).real / np.where(largo2 == 0, 1.0, largo2)
    return np.abs(p - (a + np.clip(t, 0.0, 1.0) * ab))


def _distancias_segmentos(a1, b1, a2, b2):
    """Matriz de distancias mínimas entre los segmentos [a1,b1] (filas) y [a2,b2] (columnas)."""
    a1, b1 = a1[:, None], b1[:, None]
    a2, b2 = a2[None, :], b2[None, :]
    d1 = _cruz(b1 - a1, a2 - a1)
    d2 = _cruz(b1 - a1, b2 - a1)
    d3 = _cruz(b2 - a2, a1 - a2)
    d4 = _cruz(b2 - a2, b1 - a2)
    cruzan = (d1 * d2 < 0) & (d3 * d4 < 0)
    d = np.minimum.reduce([
        distancia_punto_segmento(a1, a2, b2),
        distancia_punto_segmento(b1, a2, b2),
        distancia_punto_segmento(a2, a1, b1),
        distancia_punto_segmento(b2, a1, b1),
    ])
    return np.where(cruzan, 0.0, d)


def problemas_arbol(arbol: ArbolY, tol=None):
    """Lista (vacía si todo está bien) de violaciones de las condiciones de árbol Y."""
    t = _tol_geom() if tol is None else tol
    problemas = []
    for i, pierna in enumerate(arbol.piernas):
        if abs(pierna.inicio - arbol.centro) > t:
            problemas.append(f"la pierna {i} no empieza en el centro")
        v = pierna.vertices
        if v.size > 3:
            d = _distancias_segmentos(v[:-1], v[1:], v[:-1], v[1:])
            k = np.arange(v.size - 1)
            lejanos = np.abs(k[:, None] - k[None, :]) >= 2
            if np.any(d[lejanos] <= t):
                problemas.append(f"la pierna {i} no es simple")
    for i in range(3):
        for j in range(i + 1, 3):
            p, q = arbol.piernas[i].vertices, arbol.piernas[j].vertices
            d = _distancias_segmentos(p[:-1], p[1:], q[:-1], q[1:])
            d[0, 0] = np.inf
            if np.any(d <= t):
                problemas.append(f"las piernas {i} y {j} se cortan fuera del centro")
            u, w = p[1] - p[0], q[1] - q[0]
            if abs(_cruz(u, w)) <= t * abs(u) * abs(w) and (np.conj(u) * w).real > 0:
                problemas.append(f"las piernas {i} y {j} se superponen en el centro")
    puntas = arbol.puntas
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(puntas[i] - puntas[j]) < t:
                problemas.append(f"puntas {i} y {j} coinciden")
    return problemas


def validar_arbol(arbol: ArbolY, tol=None) -> ArbolY:
    problemas = problemas_arbol(arbol, tol)
    if problemas:
        raise ErrorLevantamiento("árbol Y inválido: " + "; ".join(problemas))
    return arbol


# ---------------------------------------------------------------------------
# Árboles
# ---------------------------------------------------------------------------

def levantar_arbol(mapa: MapaPolinomial, arbol: ArbolY, x0, tol=TOL_LEVANTAMIENTO, generador=None, tol_geom=None) -> ArbolY:
    """Levanta las tres piernas desde x0; valida el resultado como árbol Y."""
    x0 = complex(x0)
    if abs(mapa(x0) - arbol.centro) >= tol * max(1.0, abs(arbol.centro)):
        raise ValueError("x0 no es preimagen del centro del árbol")
    rng = _generador(generador)
    piernas = tuple(levantar_camino(mapa, p, x0, tol, rng) for p in arbol.piernas)
    return validar_arbol(ArbolY(x0, piernas), tol_geom)


def iterar_levantamientos(mapa: MapaPolinomial, arbol: ArbolY, n: int, presupuesto=None, tol=TOL_LEVANTAMIENTO, generador=None, tol_geom=None):
    """Levantamientos de `arbol` por f^n, en anchura sobre las preimágenes del centro.

    Con `presupuesto` se conservan a lo sumo esa cantidad de árboles por
    nivel; el orden es determinista (preimágenes por argumento).
    """
    if n < 0:
        raise ValueError("n debe ser >= 0")
    rng = _generador(generador)
    nivel = [arbol]
    for k in range(n):
        siguiente = []
        for actual in nivel:
            for x0, _ in preimagenes(mapa, actual.centro, generador=rng):
                if presupuesto is not None and len(siguiente) >= presupuesto:
                    break
                siguiente.append(levantar_arbol(mapa, actual, x0, tol, rng, tol_geom))
        nivel = siguiente
        logger.debug("nivel %d: %d árboles levantados", k + 1, len(nivel))
    return nivel


def proyectar_nivel(mapa: MapaPolinomial, levantado: ArbolY, base: ArbolY, n: int) -> float:
    """max |f^n(v) - v_base| sobre vértices correspondientes."""
    v = levantado.vertices()
    for _ in range(n):
        v = mapa(v)
    return float(np.max(np.abs(v - base.vertices())))


__all__ = [
    "levantar_camino",
    "levantar_arbol",
    "iterar_levantamientos",
    "proyectar_nivel",
    "distancia_punto_segmento",
    "problemas_arbol",
    "validar_arbol",
]
