"""chebyshev.py — Dinámica de Chebyshev en el intervalo [-1, 1].

Propósito
---------
Construcción exacta de T_d y de la negada T'_d = -T_d, estructura de las
preimágenes de los extremos ±1, partición de Markov con su matriz de
incidencia, número de crecimiento (raíz de Perron), modelo lineal a trozos y
las identidades de proyección del círculo.

API pública
-----------
- chebyshev(d), chebyshev_negado(d), mapa_intervalo(coeficientes)
- estructura_preimagenes_extremos(f) -> EstructuraExtremos
- incidencia_markov(f) -> MatrizIncidencia
- numero_crecimiento(M) -> float;  es_irreducible(M) -> bool
- verificar_identidad_coseno(d), verificar_modelo_pl(d, muestras), verificar_proyeccion_circulo(d, muestras)
- verificar_conjugacion_negacion(d), verificar_semigrupo(d, e), contar_vueltas(f, n)
- clasificar_mapa_intervalo(f) -> ClaseIntervalo

Notas
-----
- Coeficientes enteros exactos (recurrencia T_{k+1} = 2x T_k - T_{k-1}).
- Hasta grado 16 se evalúa por Horner sobre los coeficientes; por encima, por
  Clenshaw sobre la serie de Chebyshev (los coeficientes crecen como 2^d).
- Patrones: "extremos_fijos" (d impar, f(±1) = ±1), "extremos_intercambiados"
  (d impar, f(±1) = ∓1), "extremos_identificados" (d par, f(-1) = f(1)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np
from numpy.polynomial import Chebyshev, Polynomial

from .errores import ErrorConvergencia, ErrorPatron
from .utils import generador as _generador
from .validate import asegurar_cuadrada, asegurar_entero_minimo, asegurar_impar

logger = logging.getLogger(__name__)

GRADO_MAXIMO_HORNER = 16
TOL_EXTREMOS = 1e-9
TOL_IMAGEN = 1e-12

EXTREMOS_FIJOS = "extremos_fijos"
EXTREMOS_INTERCAMBIADOS = "extremos_intercambiados"
EXTREMOS_IDENTIFICADOS = "extremos_identificados"


# ---------------------------------------------------------------------------
# Mapas del intervalo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapaIntervalo:
    """Polinomio real que manda [-1, 1] en [-1, 1] (coeficientes ascendentes)."""

    coeficientes: Tuple
    nombre: str = ""
    grado_chebyshev: Optional[int] = None
    signo: int = 1

    @property
    def grado(self) -> int:
        return len(self.coeficientes) - 1

    @property
    def serie(self):
        if self.grado_chebyshev is not None:
            return self.signo * Chebyshev.basis(self.grado_chebyshev)
        return Polynomial(np.array(self.coeficientes, dtype=float))

    def __call__(self, x):
        if self.grado_chebyshev is not None and self.grado_chebyshev > GRADO_MAXIMO_HORNER:
            return self.serie(x)
        x = np.asarray(x, dtype=float)
        acumulado = np.zeros_like(x) + float(self.coeficientes[-1])
        for c in reversed(self.coeficientes[:-1]):
            acumulado = acumulado * x + float(c)
        return float(acumulado) if acumulado.ndim == 0 else acumulado

    def derivada(self, x, orden: int = 1):
        return self.serie.deriv(orden)(x)

    def puntos_de_giro(self) -> np.ndarray:
        """Puntos críticos en (-1, 1), ordenados."""
        if self.grado_chebyshev is not None:
            d = self.grado_chebyshev
            return np.sort(np.cos(np.pi * np.arange(1, d) / d))
        raices = self.serie.deriv().roots()
        reales = raices[np.abs(np.imag(raices)) < 1e-9].real
        return np.sort(reales[(reales > -1) & (reales < 1)])


def _coeficientes_chebyshev(d: int) -> List[int]:
    anterior, actual = [1], [0, 1]
    if d == 0:
        return anterior
    for _ in range(d - 1):
        siguiente = [0] + [2 * c for c in actual]
        for k, c in enumerate(anterior):
            siguiente[k] -= c
        anterior, actual = actual, siguiente
    return actual


def _validar_imagen(f: MapaIntervalo) -> MapaIntervalo:
    x = np.concatenate([np.linspace(-1, 1, 4001), f.puntos_de_giro()])
    y = np.asarray(f(x))
    if np.max(np.abs(y)) > 1 + TOL_IMAGEN:
        raise ValueError(f"{f.nombre or 'el mapa'} no manda [-1, 1] en sí mismo")
    return f


def chebyshev(d: int) -> MapaIntervalo:
    """T_d con coeficientes enteros exactos."""
    d = asegurar_entero_minimo(d, 1, "d")
    return MapaIntervalo(tuple(_coeficientes_chebyshev(d)), f"T_{d}", d, 1)


def chebyshev_negado(d: int) -> MapaIntervalo:
    d = asegurar_entero_minimo(d, 1, "d")
    return MapaIntervalo(tuple(-c for c in _coeficientes_chebyshev(d)), f"T'_{d}", d, -1)


def mapa_intervalo(coeficientes, nombre: str = "") -> MapaIntervalo:
    """Mapa del intervalo arbitrario; valida que la imagen quede en [-1, 1]."""
    coefs = [float(c) for c in coeficientes]
    while len(coefs) > 1 and coefs[-1] == 0:
        coefs.pop()
    if len(coefs) < 2:
        raise ValueError("el mapa del intervalo debe tener grado >= 1")
    return _validar_imagen(MapaIntervalo(tuple(coefs), nombre))


def verificar_conjugacion_negacion(d: int, muestras: int = 1001) -> float:
    """max |T'_d(-x) + T_d(x)|: cero (salvo redondeo) exactamente cuando d es par."""
    t, tn = chebyshev(d), chebyshev_negado(d)
    x = np.linspace(-1, 1, muestras)
    return float(np.max(np.abs(tn(-x) + t(x))))


# ---------------------------------------------------------------------------
# Preimágenes de los extremos
# ---------------------------------------------------------------------------

@dataclass
class EstructuraExtremos:
    puntos: List[dict]
    patron: str
    n: int
    balance: dict = field(default_factory=dict)


def _grado_local(f: MapaIntervalo, x: float, tol=TOL_EXTREMOS) -> int:
    escala = max(1.0, float(f.grado) ** 2)
    k = 1
    while k < f.grado and abs(f.derivada(x, k)) <= tol * escala:
        k += 1
    return k


def _newton(f: MapaIntervalo, valor: float, x0: float, pasos: int = 60):
    x = x0
    for _ in range(pasos):
        d = f.derivada(x)
        if d == 0:
            return None
        x = x - (f(x) - valor) / d
        if not np.isfinite(x) or abs(x) > 2:
            return None
    return x if abs(f(x) - valor) <= TOL_EXTREMOS else None


def _soluciones_extremos(f: MapaIntervalo):
    candidatos = [-1.0, 1.0] + [float(x) for x in f.puntos_de_giro()]
    nodos = np.cos((2 * np.arange(4 * f.grado) + 1) * np.pi / (8 * f.grado))
    for valor in (-1.0, 1.0):
        for x0 in nodos:
            x = _newton(f, valor, float(x0))
            if x is None or abs(x) > 1 + TOL_EXTREMOS:
                continue
            x = float(np.clip(x, -1, 1))
            if all(abs(x - c) > 1e-6 for c in candidatos):
                candidatos.append(x)
    soluciones = []
    for x in sorted(candidatos):
        y = f(x)
        for valor in (-1, 1):
            if abs(y - valor) <= TOL_EXTREMOS:
                soluciones.append((x, valor))
    return soluciones


def estructura_preimagenes_extremos(f: MapaIntervalo) -> EstructuraExtremos:
    """Soluciones de f = ±1 con grado local, ordenadas, y el patrón de entrelazado.

    ErrorPatron si el orden no alterna, si un punto interior no es un pliegue
    simple (grado 2) o si la cantidad de puntos no es d + 1.
    """
    d = f.grado
    soluciones = _soluciones_extremos(f)
    if len(soluciones) != d + 1:
        raise ErrorPatron(f"se esperaban {d + 1} preimágenes de los extremos, hay {len(soluciones)}")
    xs = [x for x, _ in soluciones]
    valores = [v for _, v in soluciones]
    if abs(xs[0] + 1) > TOL_EXTREMOS or abs(xs[-1] - 1) > TOL_EXTREMOS:
        raise ErrorPatron("los extremos ±1 deben ser preimágenes de ±1")
    if any(valores[k] == valores[k + 1] for k in range(d)):
        raise ErrorPatron("las preimágenes de -1 y de 1 no se alternan")

    grados = [_grado_local(f, x) for x in xs]
    if grados[0] != 1 or grados[-1] != 1 or any(g != 2 for g in grados[1:-1]):
        raise ErrorPatron(f"grados locales inesperados: {grados}")

    if d % 2:
        patron = EXTREMOS_FIJOS if valores[0] == -1 else EXTREMOS_INTERCAMBIADOS
        etiquetas = [e for k in range(1, (d - 1) // 2 + 1) for e in (f"y{k}", f"x{k}")]
        n = (d - 1) // 2
    else:
        patron = EXTREMOS_IDENTIFICADOS
        n = d // 2
        etiquetas = []
        for k in range(1, n + 1):
            etiquetas.append(f"x{k}")
            if k < n:
                etiquetas.append(f"y{k}")
    etiquetas = ["-1"] + etiquetas + ["1"]

    balance = {"-1": 0, "1": 0}
    for v, g in zip(valores, grados):
        balance[str(v)] += g
    if balance["-1"] != d or balance["1"] != d:
        raise ErrorPatron(f"la suma de grados no balancea: {balance}")
    puntos = [
        {"x": x, "valor": v, "grado": g, "etiqueta": e}
        for x, v, g, e in zip(xs, valores, grados, etiquetas)
    ]
    return EstructuraExtremos(puntos, patron, n, balance)


# ---------------------------------------------------------------------------
# Markov y crecimiento
# ---------------------------------------------------------------------------

@dataclass
class MatrizIncidencia:
    matriz: np.ndarray
    puntos: List[float]


def incidencia_markov(f: MapaIntervalo, estructura: Optional[EstructuraExtremos] = None) -> MatrizIncidencia:
    """Entrada (i, j) = 1 sii el intervalo j está contenido en f(intervalo i)."""
    estructura = estructura_preimagenes_extremos(f) if estructura is None else estructura
    puntos = np.array([p["x"] for p in estructura.puntos])
    k = puntos.size - 1
    M = np.zeros((k, k), dtype=int)
    for i in range(k):
        a, b = f(puntos[i]), f(puntos[i + 1])
        lo, hi = min(a, b), max(a, b)
        for extremo in (lo, hi):
            if np.min(np.abs(puntos - extremo)) > TOL_EXTREMOS:
                raise ErrorPatron(f"partición no Markov: f(intervalo {i}) termina en {extremo:.12g}")
        for j in range(k):
            if puntos[j] >= lo - TOL_EXTREMOS and puntos[j + 1] <= hi + TOL_EXTREMOS:
                M[i, j] = 1
    return MatrizIncidencia(M, [float(p) for p in puntos])


def _matriz(M) -> np.ndarray:
    return asegurar_cuadrada(M.matriz if isinstance(M, MatrizIncidencia) else M).astype(float)


def es_irreducible(M) -> bool:
    A = _matriz(M)
    return nx.is_strongly_connected(nx.from_numpy_array(A > 0, create_using=nx.DiGraph))


def numero_crecimiento(M, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """Raíz de Perron por potencias sobre A + I, con cotas de Collatz–Wielandt."""
    A = _matriz(M)
    if np.any(A < 0):
        raise ValueError("la matriz de incidencia debe ser no negativa")
    B = A + np.eye(A.shape[0])
    x = np.ones(A.shape[0])
    for it in range(1, max_iter + 1):
        y = B @ x
        cocientes = y / x
        bajo, alto = cocientes.min(), cocientes.max()
        if alto - bajo <= tol * alto:
            valor = float((alto + bajo) / 2 - 1)
            if valor <= 1 + 1e-9:
                logger.warning("número de crecimiento %.12g: el mapa no es expansivo", valor)
            logger.debug("Perron en %d iteraciones", it)
            return valor
        x = y / np.linalg.norm(y)
    raise ErrorConvergencia("la iteración de potencias no convergió", residuos=[float(alto - bajo)])


# ---------------------------------------------------------------------------
# Verificaciones
# ---------------------------------------------------------------------------

def _plegar(d, y):
    t = np.mod(d * np.asarray(y, dtype=float), 2.0)
    return np.where(t <= 1.0, t, 2.0 - t)


def verificar_modelo_pl(d: int, muestras: int = 10_000) -> float:
    """max |h(g(y)) - T_d(h(y))| con g el pliegue de pendiente ±d y h(y) = cos(πy)."""
    d = asegurar_entero_minimo(d, 2, "d")
    y = np.linspace(0.0, 1.0, asegurar_entero_minimo(muestras, 2, "muestras"))
    t = chebyshev(d)
    return float(np.max(np.abs(np.cos(np.pi * _plegar(d, y)) - t(np.cos(np.pi * y)))))


def verificar_identidad_coseno(d: int, muestras: int = 1000, generador=None) -> float:
    """max |T_d(cos θ) - cos(dθ)| sobre θ uniformes en [0, 2π)."""
    rng = _generador(generador)
    theta = rng.uniform(0.0, 2 * np.pi, asegurar_entero_minimo(muestras, 1, "muestras"))
    return float(np.max(np.abs(chebyshev(d)(np.cos(theta)) - np.cos(d * theta))))


def verificar_proyeccion_circulo(d: int, muestras: int = 1000, generador=None) -> float:
    """Error máximo de cos(dθ) = T_d(cos θ) y sin(dθ) = (-1)^n T_d(sin θ), d = 2n+1."""
    d = asegurar_impar(d)
    rng = _generador(generador)
    theta = rng.uniform(0.0, 2 * np.pi, muestras)
    t = chebyshev(d)
    n = (d - 1) // 2
    horizontal = np.abs(np.cos(d * theta) - t(np.cos(theta)))
    vertical = np.abs(np.sin(d * theta) - (-1) ** n * t(np.sin(theta)))
    return float(max(horizontal.max(), vertical.max()))


def verificar_semigrupo(d: int, e: int, muestras: int = 100, generador=None) -> float:
    """max |T_d(T_e(x)) - T_{de}(x)|."""
    rng = _generador(generador)
    x = rng.uniform(-1.0, 1.0, muestras)
    return float(np.max(np.abs(chebyshev(d)(chebyshev(e)(x)) - chebyshev(d * e)(x))))


def contar_vueltas(f: MapaIntervalo, n: int, por_vuelta: int = 64) -> int:
    """Tramos monótonos maximales de f^n, contando cambios de signo de las diferencias."""
    n = asegurar_entero_minimo(n, 1, "n")
    theta = np.linspace(0.0, np.pi, por_vuelta * f.grado ** n + 1)
    y = np.cos(theta)
    for _ in range(n):
        y = np.clip(f(y), -1.0, 1.0)
    signos = np.sign(np.diff(y))
    signos = signos[signos != 0]
    return int(1 + np.count_nonzero(signos[1:] != signos[:-1]))


@dataclass
class ClaseIntervalo:
    modelo: str
    patron: str
    crecimiento: float
    expansivo: bool
    irreducible: bool
    estructura: EstructuraExtremos
    incidencia: MatrizIncidencia


def clasificar_mapa_intervalo(f: MapaIntervalo) -> ClaseIntervalo:
    """Empareja f con T_d o T'_d por su entrelazado y comprueba s > 1."""
    estructura = estructura_preimagenes_extremos(f)
    incidencia = incidencia_markov(f, estructura)
    s = numero_crecimiento(incidencia)
    d = f.grado
    if estructura.patron == EXTREMOS_FIJOS:
        modelo = f"T_{d}"
    elif estructura.patron == EXTREMOS_INTERCAMBIADOS:
        modelo = f"T'_{d}"
    else:
        modelo = f"T_{d}" if estructura.puntos[0]["valor"] == 1 else f"T'_{d}"
    return ClaseIntervalo(modelo, estructura.patron, s, s > 1 + 1e-9, es_irreducible(incidencia), estructura, incidencia)


__all__ = [
    "MapaIntervalo",
    "chebyshev",
    "chebyshev_negado",
    "mapa_intervalo",
    "verificar_conjugacion_negacion",
    "EstructuraExtremos",
    "estructura_preimagenes_extremos",
    "MatrizIncidencia",
    "incidencia_markov",
    "es_irreducible",
    "numero_crecimiento",
    "verificar_modelo_pl",
    "verificar_identidad_coseno",
    "verificar_proyeccion_circulo",
    "verificar_semigrupo",
    "contar_vueltas",
    "ClaseIntervalo",
    "clasificar_mapa_intervalo",
    "EXTREMOS_FIJOS",
    "EXTREMOS_INTERCAMBIADOS",
    "EXTREMOS_IDENTIFICADOS",
]
