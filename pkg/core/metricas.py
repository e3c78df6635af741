"""metricas.py — Métrica visual estimada y controles métricos de la jerarquía.

Propósito
---------
A partir de una JerarquiaCubrimiento se estima una métrica visual
d(x, y) = exp(-ε·m(x, y)), con m el nivel más hondo de un elemento que
contiene a ambos puntos (m = -1 si no comparten ningún elemento de U0). Con
ella se ajustan las constantes de "casi bolas", la constante K de la
desigualdad triangular cuasi-métrica, las funciones de distorsión de
redondez y de diámetro relativo, la homotecia y el módulo de cuasi-simetría.

Funciones públicas
------------------
- metrica_visual(h, epsilon=None) -> MetricaVisual (invocable sobre puntos)
- estimar_metrica_visual(h, epsilon=None, muestras=120) -> EstimacionMetricaVisual
- verificar_distorsion(h, vm) -> EstadisticasDistorsion
- verificar_homotecia(mapa, s, metrica=None, muestras=100, kappa_ref=None) -> InformeHomotecia
- estimar_modulo_qs(metrica_a, metrica_b, triples) -> ModuloQS
- verificar_cuasi_autosimilitud(h, vm, muestras=4) -> dict
- envolvente_monotona(x, y) -> (x_ordenado, envolvente)
- distancia_euclidea, distancia_arco, triples_aleatorios

Advertencia
-----------
La estimación usa un único elemento común, no el ínfimo sobre cadenas; es
una cota gruesa de la métrica visual verdadera.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from scipy import ndimage, stats
from scipy.optimize import isotonic_regression

from .antena import muestrear_centros
from .cubrimiento import FALLA, PASA, JerarquiaCubrimiento
from .errores import ErrorProfundidad
from .tipos import ContinuoMalla, MapaPolinomial
from .utils import generador as _generador

logger = logging.getLogger(__name__)

PROFUNDIDAD_MINIMA_VISUAL = 4
FACTOR_ESTABILIDAD = 1.5

QS_CONSISTENTE = "qs_consistente"
QS_NO_ACOTADO = "qs_no_acotado"


# ---------------------------------------------------------------------------
# Métricas de referencia
# ---------------------------------------------------------------------------

def distancia_euclidea(a, b):
    return np.abs(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))


def distancia_arco(a, b):
    """Longitud de arco entre los ángulos de a y b sobre el círculo unidad."""
    diferencia = np.abs(np.angle(np.asarray(a, dtype=complex)) - np.angle(np.asarray(b, dtype=complex)))
    return np.minimum(diferencia, 2 * np.pi - diferencia)


def envolvente_monotona(x, y):
    """Envolvente superior no decreciente: regresión isotónica desplazada por el residuo máximo."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    orden = np.argsort(x, kind="stable")
    xs, ys = x[orden], y[orden]
    if xs.size == 0:
        return xs, ys
    ajuste = isotonic_regression(ys, increasing=True).x
    return xs, ajuste + max(0.0, float(np.max(ys - ajuste)))


# ---------------------------------------------------------------------------
# Métrica visual
# ---------------------------------------------------------------------------

class MetricaVisual:
    """d(x, y) = exp(-ε·m(x, y)); los puntos se proyectan a la celda más cercana de s."""

    def __init__(self, h: JerarquiaCubrimiento, epsilon=None):
        self.h = h
        self.epsilon = float(np.log(h.mapa.grado) if epsilon is None else epsilon)
        if self.epsilon <= 0:
            raise ValueError("epsilon debe ser positivo")
        s = h.s
        self._planas = np.flatnonzero(s.mascara.ravel())
        self._pertenencia = []
        for nivel in h.niveles:
            M = np.zeros((self._planas.size, len(nivel)), dtype=bool)
            for j, e in enumerate(nivel):
                M[np.searchsorted(self._planas, e.celdas), j] = True
            self._pertenencia.append(M)
        _, (fi, fj) = ndimage.distance_transform_edt(~s.mascara, return_indices=True)
        self._cercana = np.ravel_multi_index((fi, fj), s.forma)

    def indices(self, z) -> np.ndarray:
        s = self.h.s
        fi, fj = s.indices_de(np.atleast_1d(np.asarray(z, dtype=complex)))
        fi = np.clip(fi, 0, s.forma[0] - 1)
        fj = np.clip(fj, 0, s.forma[1] - 1)
        return np.searchsorted(self._planas, self._cercana[fi, fj])

    def pertenencia(self, indices, nivel) -> np.ndarray:
        return self._pertenencia[nivel][indices]

    def niveles_comunes(self, ia, ib) -> np.ndarray:
        if not (self._pertenencia[0][ia].any(axis=-1).all() and self._pertenencia[0][ib].any(axis=-1).all()):
            raise ValueError("U0 no es un cubrimiento: hay puntos fuera de todo elemento de nivel 0")
        m = np.full(np.broadcast(ia, ib).shape, -1, dtype=int)
        for n, M in enumerate(self._pertenencia):
            m[np.any(M[ia] & M[ib], axis=-1)] = n
        return m

    def matriz_niveles(self, ia) -> np.ndarray:
        if not self._pertenencia[0][ia].any(axis=1).all():
            raise ValueError("U0 no es un cubrimiento: hay puntos fuera de todo elemento de nivel 0")
        m = np.full((ia.size, ia.size), -1, dtype=int)
        for n, M in enumerate(self._pertenencia):
            sub = M[ia].astype(np.int32)
            m[(sub @ sub.T) > 0] = n
        return m

    def __call__(self, a, b):
        ia, ib = self.indices(a), self.indices(b)
        d = np.exp(-self.epsilon * self.niveles_comunes(ia, ib))
        d[ia == ib] = 0.0
        return d


def metrica_visual(h: JerarquiaCubrimiento, epsilon=None) -> MetricaVisual:
    return MetricaVisual(h, epsilon)


@dataclass
class EstimacionMetricaVisual:
    epsilon: float
    puntos: List[complex]
    niveles: np.ndarray
    C: float
    r0: float
    r1: float
    K: float
    brecha: Optional[int]
    metrica: MetricaVisual = field(repr=False)

    def distancias(self) -> np.ndarray:
        d = np.exp(-self.epsilon * self.niveles.astype(float))
        np.fill_diagonal(d, 0.0)
        return d


def _constantes_elemento(D, dentro, r):
    """C_W(x) para cada x de la muestra dentro de W (inf fuera)."""
    C = np.full(D.shape[0], np.inf)
    if not dentro.any():
        return C
    sub = D[dentro]
    exterior = sub[:, dentro].max(axis=1) / r
    fuera = ~dentro
    with np.errstate(divide="ignore"):
        interior = r / sub[:, fuera].min(axis=1) if fuera.any() else np.zeros(sub.shape[0])
    C[dentro] = np.maximum(1.0, np.maximum(exterior, interior))
    return C


def _constante_triangular(D) -> float:
    K = 1.0
    for y in range(D.shape[0]):
        cota = np.maximum(D[:, y][:, None], D[y, :][None, :])
        validos = cota > 0
        if validos.any():
            K = max(K, float(np.max(D[validos] / cota[validos])))
    return K


def estimar_metrica_visual(h: JerarquiaCubrimiento, epsilon=None, muestras: int = 120, generador=None) -> EstimacionMetricaVisual:
    """Ajusta C (casi bolas I), r1 (casi bolas II), r0 y la brecha de niveles (casi bolas III) y K."""
    if h.profundidad < PROFUNDIDAD_MINIMA_VISUAL:
        raise ErrorProfundidad(f"la métrica visual necesita profundidad >= {PROFUNDIDAD_MINIMA_VISUAL}")
    vm = metrica_visual(h, epsilon)
    puntos = muestrear_centros(h.s, muestras, generador)
    ia = vm.indices(puntos)
    m = vm.matriz_niveles(ia)
    D = np.exp(-vm.epsilon * m.astype(float))
    np.fill_diagonal(D, 0.0)
    eps = vm.epsilon

    # casi bolas I: peor elemento con su mejor centro
    por_nivel = []
    C = 1.0
    for n in range(h.profundidad + 1):
        r = np.exp(-eps * n)
        filas = []
        for j in range(len(h.niveles[n])):
            Cx = _constantes_elemento(D, vm.pertenencia(ia, n)[:, j], r)
            filas.append(Cx)
            if np.isfinite(Cx).any():
                C = max(C, float(Cx.min()))
        por_nivel.append(np.array(filas) if filas else np.full((0, ia.size), np.inf))

    # casi bolas II: niveles desde los que todo punto tiene un elemento con constante <= C
    r1 = 0.0
    for n in range(h.profundidad, -1, -1):
        if por_nivel[n].size == 0 or not np.all(por_nivel[n].min(axis=0) <= C * (1 + 1e-9)):
            break
        r1 = float(np.exp(-eps * n))

    # casi bolas III: W' ⊂ B(x, r) ⊂ W con brecha de niveles
    r0, brecha = 0.0, None
    for n in range(h.profundidad - 1, -1, -1):
        r = np.exp(-eps * n)
        brechas = []
        for x in range(ia.size):
            bola = D[x] <= r
            niveles_w = [k for k in range(h.profundidad + 1) if np.any(np.all(vm.pertenencia(ia[bola], k), axis=0))]
            niveles_wp = [
                k for k in range(h.profundidad + 1)
                for col in np.flatnonzero(vm.pertenencia(ia[x:x + 1], k)[0])
                if np.all(bola[vm.pertenencia(ia, k)[:, col]])
            ]
            if not niveles_w or not niveles_wp:
                brechas = None
                break
            brechas.append(min(niveles_wp) - max(niveles_w))
        if brechas is None:
            break
        r0 = float(r)
        brecha = max(brechas) if brecha is None else max(brecha, max(brechas))

    K = _constante_triangular(D)
    logger.info("métrica visual: ε=%.4g C=%.4g r0=%.4g r1=%.4g K=%.4g", eps, C, r0, r1, K)
    return EstimacionMetricaVisual(eps, [complex(p) for p in puntos], m, C, r0, r1, K, brecha, vm)


# ---------------------------------------------------------------------------
# Distorsión
# ---------------------------------------------------------------------------

@dataclass
class EstadisticasDistorsion:
    pares_redondez: List[tuple]
    pares_diametro: List[tuple]
    envolvente_redondez: tuple
    envolvente_diametro: tuple
    cambio_redondez: float
    cambio_diametro: float
    veredicto: str


def _redondez_muestral(D, dentro, x):
    fuera = ~dentro
    if not fuera.any() or dentro.sum() < 2:
        return None
    interior = D[x, fuera].min()
    if interior <= 0:
        return None
    return max(1.0, float(D[x, dentro].max() / interior))


def _diametro_muestral(D, dentro):
    if dentro.sum() < 2:
        return None
    return float(D[np.ix_(dentro, dentro)].max())


def _contenido(hijo, padre) -> bool:
    return np.isin(hijo.celdas, padre.celdas).mean() >= 0.95


def _pares(h, vm, puntos, ia, D, niveles_max):
    """Pares (redondez de U en y, redondez de Ũ en ỹ) y (diámetro relativo arriba, abajo)."""
    redondez, diametros = [], []
    for n in range(1, niveles_max + 1):
        pert_n = vm.pertenencia(ia, n)
        pert_ant = vm.pertenencia(ia, n - 1)
        for j, e in enumerate(h.niveles[n]):
            dentro = pert_n[:, j]
            if not dentro.any():
                continue
            padre = pert_ant[:, e.imagen_id]
            x = int(np.flatnonzero(dentro)[0])
            y = None
            if padre.any():
                # muestra de U más cercana a f(ỹ)
                cercania = vm(np.full(puntos.size, h.mapa(complex(puntos[x]))), puntos)
                y = int(np.argmin(np.where(padre, cercania, np.inf)))
            if y is not None:
                r_abajo = _redondez_muestral(D, dentro, x)
                r_arriba = _redondez_muestral(D, padre, y)
                if r_abajo is not None and r_arriba is not None:
                    redondez.append((r_arriba, r_abajo))
            if n + 1 <= niveles_max:
                for k, hijo in enumerate(h.niveles[n + 1]):
                    if not _contenido(hijo, e):
                        continue
                    imagen_hijo = h.niveles[n][hijo.imagen_id]
                    if not _contenido(imagen_hijo, h.niveles[n - 1][e.imagen_id]):
                        continue
                    d_e, d_h = _diametro_muestral(D, dentro), _diametro_muestral(D, vm.pertenencia(ia, n + 1)[:, k])
                    d_u = _diametro_muestral(D, padre)
                    d_up = _diametro_muestral(D, pert_n[:, hijo.imagen_id])
                    if None not in (d_e, d_h, d_u, d_up) and d_e > 0 and d_u > 0:
                        diametros.append((d_up / d_u, d_h / d_e))
    return redondez, diametros


def _cambio(pares_todos, pares_previos) -> float:
    """Máximo cociente entre las envolventes con y sin el nivel más hondo (en los x comunes)."""
    if len(pares_todos) < 2 or len(pares_previos) < 2:
        return 1.0
    xa, ea = envolvente_monotona(*zip(*pares_todos))
    xb, eb = envolvente_monotona(*zip(*pares_previos))
    lo, hi = max(xa[0], xb[0]), min(xa[-1], xb[-1])
    if hi < lo:
        return np.inf
    grilla = np.linspace(lo, hi, 16)
    a = np.interp(grilla, xa, ea)
    b = np.interp(grilla, xb, eb)
    with np.errstate(divide="ignore", invalid="ignore"):
        cociente = np.maximum(a / b, b / a)
    cociente = cociente[np.isfinite(cociente)]
    return float(cociente.max()) if cociente.size else 1.0


def verificar_distorsion(h: JerarquiaCubrimiento, vm: EstimacionMetricaVisual) -> EstadisticasDistorsion:
    """Pares de redondez y de diámetro relativo en la métrica visual, con envolventes monótonas.

    Pasa si agregar el nivel más hondo cambia cada envolvente a lo sumo un factor 1.5.
    """
    if h.profundidad < 2:
        raise ErrorProfundidad("anidamiento insuficiente: hacen falta al menos 2 niveles")
    metrica = vm.metrica
    ia = metrica.indices(np.asarray(vm.puntos))
    D = vm.distancias()
    puntos = np.asarray(vm.puntos)
    redondez, diametros = _pares(h, metrica, puntos, ia, D, h.profundidad)
    redondez_prev, diametros_prev = _pares(h, metrica, puntos, ia, D, h.profundidad - 1)
    cambio_r = _cambio(redondez, redondez_prev)
    cambio_d = _cambio(diametros, diametros_prev)
    env_r = envolvente_monotona(*zip(*redondez)) if redondez else (np.array([]), np.array([]))
    env_d = envolvente_monotona(*zip(*diametros)) if diametros else (np.array([]), np.array([]))
    estable = cambio_r <= FACTOR_ESTABILIDAD and cambio_d <= FACTOR_ESTABILIDAD
    return EstadisticasDistorsion(
        pares_redondez=redondez,
        pares_diametro=diametros,
        envolvente_redondez=(env_r[0].tolist(), env_r[1].tolist()),
        envolvente_diametro=(env_d[0].tolist(), env_d[1].tolist()),
        cambio_redondez=cambio_r,
        cambio_diametro=cambio_d,
        veredicto=PASA if estable else FALLA,
    )


# ---------------------------------------------------------------------------
# Homotecia
# ---------------------------------------------------------------------------

@dataclass
class InformeHomotecia:
    kappa: float
    violaciones: int
    pares: int


def verificar_homotecia(mapa: MapaPolinomial, s: ContinuoMalla, metrica: Optional[Callable] = None, muestras: int = 100, kappa_ref=None, radio_celdas: float = 8.0, generador=None) -> InformeHomotecia:
    """Mayor κ con d(x, y) >= κ·d(f(x), f(y)) sobre pares cercanos muestreados."""
    metrica = distancia_euclidea if metrica is None else metrica
    rng = _generador(generador)
    centros = s.centros()
    xs, ys = [], []
    for _ in range(muestras):
        x = centros[rng.integers(centros.size)]
        cerca = np.flatnonzero((np.abs(centros - x) <= radio_celdas * s.ancho) & (centros != x))
        if cerca.size == 0:
            continue
        xs.append(x)
        ys.append(centros[rng.choice(cerca)])
    xs, ys = np.array(xs), np.array(ys)
    d = np.asarray(metrica(xs, ys), dtype=float)
    df = np.asarray(metrica(mapa(xs), mapa(ys)), dtype=float)
    validos = df > 0
    kappa = float(np.min(d[validos] / df[validos])) if validos.any() else np.inf
    violaciones = 0
    if kappa_ref is not None:
        violaciones = int(np.sum(d < kappa_ref * df * (1 - 1e-12)))
    return InformeHomotecia(kappa, violaciones, int(xs.size))


# ---------------------------------------------------------------------------
# Cuasi-simetría
# ---------------------------------------------------------------------------

@dataclass
class ModuloQS:
    razones_a: List[float]
    razones_b: List[float]
    envolvente: tuple
    exponente: Optional[float]
    omitidos: int
    veredicto: str


def triples_aleatorios(puntos, n: int, generador=None) -> np.ndarray:
    """n triples (x, y, z) de puntos distintos de la muestra."""
    rng = _generador(generador)
    puntos = np.asarray(puntos, dtype=complex)
    indices = np.array([rng.choice(puntos.size, 3, replace=False) for _ in range(n)])
    return puntos[indices]


def _maximo_hasta(x, e, tope):
    dentro = x <= tope
    return float(e[dentro].max()) if dentro.any() else 0.0


def estimar_modulo_qs(metrica_a: Callable, metrica_b: Callable, triples, tope: float = 10.0) -> ModuloQS:
    """Dispersión (d_A(x,y)/d_A(x,z), d_B(x,y)/d_B(x,z)) con envolvente monótona η̂."""
    triples = np.asarray(triples, dtype=complex)
    x, y, z = triples[:, 0], triples[:, 1], triples[:, 2]
    a_xy, a_xz = np.asarray(metrica_a(x, y), float), np.asarray(metrica_a(x, z), float)
    b_xy, b_xz = np.asarray(metrica_b(x, y), float), np.asarray(metrica_b(x, z), float)
    validos = (a_xz > 0) & (b_xz > 0)
    omitidos = int(np.sum(~validos))
    t = a_xy[validos] / a_xz[validos]
    u = b_xy[validos] / b_xz[validos]
    xs, env = envolvente_monotona(t, u)

    positivos = (t > 0) & (u > 0)
    exponente = None
    if positivos.sum() >= 3 and np.ptp(np.log(t[positivos])) > 0:
        exponente = float(stats.linregress(np.log(t[positivos]), np.log(u[positivos])).slope)

    mitad = max(1, t.size // 2)
    xm, em = envolvente_monotona(t[:mitad], u[:mitad])
    completo = _maximo_hasta(xs, env, tope)
    parcial = _maximo_hasta(xm, em, tope)
    acotado = np.isfinite(completo) and completo <= 2.0 * parcial + 1e-12
    return ModuloQS(
        razones_a=t.tolist(),
        razones_b=u.tolist(),
        envolvente=(xs.tolist(), env.tolist()),
        exponente=exponente,
        omitidos=omitidos,
        veredicto=QS_CONSISTENTE if acotado else QS_NO_ACOTADO,
    )


def verificar_cuasi_autosimilitud(h: JerarquiaCubrimiento, vm: EstimacionMetricaVisual, muestras: int = 4) -> dict:
    """Para bolas de radio < r0, el k cuyo f^k lleva la bola a escala r0 y la dispersión del reescalado."""
    D = vm.distancias()
    puntos = np.asarray(vm.puntos)
    r0 = vm.r0 if vm.r0 > 0 else float(np.exp(-vm.epsilon))
    resultados = []
    for x in range(min(muestras, puntos.size)):
        r = r0 * np.exp(-vm.epsilon)
        bola = np.flatnonzero(D[x] <= r)
        if bola.size < 3:
            continue
        imagen = puntos[bola]
        mejor = None
        for k in range(1, h.profundidad + 1):
            imagen = h.mapa(imagen)
            if not np.all(np.isfinite(imagen)):
                break
            d0 = D[np.ix_(bola, bola)]
            dk = vm.metrica(imagen[:, None], imagen[None, :])
            pares = d0 > 0
            if not pares.any():
                break
            razones = dk[pares] / d0[pares]
            razones = razones[razones > 0]
            if razones.size == 0:
                continue
            dispersion = float(razones.max() / razones.min())
            if mejor is None or dispersion < mejor[1]:
                mejor = (k, dispersion)
        if mejor is not None:
            resultados.append({"punto": complex(puntos[x]), "k": mejor[0], "dispersion": mejor[1]})
    return {"r0": r0, "bolas": resultados}


__all__ = [
    "distancia_euclidea",
    "distancia_arco",
    "envolvente_monotona",
    "MetricaVisual",
    "metrica_visual",
    "EstimacionMetricaVisual",
    "estimar_metrica_visual",
    "EstadisticasDistorsion",
    "verificar_distorsion",
    "InformeHomotecia",
    "verificar_homotecia",
    "ModuloQS",
    "triples_aleatorios",
    "estimar_modulo_qs",
    "verificar_cuasi_autosimilitud",
    "QS_CONSISTENTE",
    "QS_NO_ACOTADO",
]
