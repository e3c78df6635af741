"""dinamica.py — Sistemas dinámicos polinomiales en el plano.

Propósito
---------
Evaluación, grado local, preimágenes con multiplicidad, discretización del
conjunto de Julia y clasificación de órbitas críticas.

API pública
-----------
- evaluar(mapa, z) -> (valor | None, escapa)
- grado_local(mapa, z, tol=None) -> int
- raices_polinomio(coefs, generador=None) -> np.ndarray
- preimagenes(mapa, w, generador=None, tol=None) -> [(punto, multiplicidad)]
- conjunto_julia(mapa, resolucion, max_iter, hilos=1) -> ContinuoMalla
- clasificar_orbitas_criticas(mapa, max_iter=200, tol_orbita=None) -> InformeOrbitas

Notas
-----
- Raíces por iteración simultánea (Durand–Kerner) con reinicios de fase
  aleatoria. Una raíz k-uple sale dispersa en un radio del orden de
  eps^(1/k); se agrupan las k raíces vecinas si caben en ese radio y el cero
  de p^(k-1) cercano resuelve p. El tamaño del grupo es la multiplicidad y
  la suma de multiplicidades es siempre el grado.
- El conjunto de Julia se obtiene por tiempo de escape con estimador de
  distancia: una celda entra si su centro no escapa y tiene un vecino que sí,
  o si escapa con distancia estimada al conjunto menor que un ancho de celda.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import ndimage

from .errores import ErrorConvergencia
from .tipos import ContinuoMalla, MapaPolinomial
from .tolerancias import tol_orbita as _tol_orbita, tol_raiz as _tol_raiz
from .utils import generador as _generador
from .validate import asegurar_entero_minimo

logger = logging.getLogger(__name__)

RADIO_AGRUPAMIENTO = 1e-6
_EPS = float(np.finfo(float).eps)
RADIO_RECURRENCIA = 1e-3
PASOS_ANTES_DE_RECURRENCIA = 10
_OCHO_VECINOS = np.ones((3, 3), dtype=bool)

# Etiquetas de órbitas críticas
PERIODICA = "periodica"
PREPERIODICA = "preperiodica"
ATRAIDA = "atraida"
ESCAPA = "escapa"
RECURRENTE = "recurrente_sospechosa"
INDETERMINADA = "indeterminada"


# ---------------------------------------------------------------------------
# Evaluación y grado local
# ---------------------------------------------------------------------------

def evaluar(mapa: MapaPolinomial, z):
    """f(z) por Horner. Un desbordamiento devuelve (None, True) en vez de fallar."""
    with np.errstate(over="ignore", invalid="ignore"):
        valor = mapa(complex(z))
    if not (np.isfinite(valor.real) and np.isfinite(valor.imag)):
        return None, True
    return valor, False


def grado_local(mapa: MapaPolinomial, z, tol=None) -> int:
    """1 + número de derivadas consecutivas que se anulan en z (dentro de tol)."""
    t = _tol_raiz() if tol is None else tol
    k = 1
    while k < mapa.grado and abs(mapa.evaluar_derivada(complex(z), k)) <= t:
        k += 1
    return k


# ---------------------------------------------------------------------------
# Raíces (Durand–Kerner)
# ---------------------------------------------------------------------------

def _error_hacia_atras(z, monico):
    """|p(z)| relativo a max|a_k| · sum |z|^k (error hacia atrás normado por raíz).

    Normado y no por componentes: con coeficientes nulos (z^2 en 0) la
    medida por componentes no baja de 1.
    """
    num = np.abs(P.polyval(z, monico))
    den = np.max(np.abs(monico)) * P.polyval(np.abs(z), np.ones(monico.size))
    return num / np.maximum(den, np.finfo(float).tiny)


def raices_polinomio(coefs, generador=None, max_iter=2000, reinicios=6):
    """Todas las raíces (con repetición) del polinomio de coeficientes ascendentes."""
    c = np.trim_zeros(np.asarray(coefs, dtype=complex), "b")
    n = c.size - 1
    if n < 1:
        raise ValueError("el polinomio debe tener grado >= 1")
    if n == 1:
        return np.array([-c[0] / c[1]])
    rng = _generador(generador)
    monico = c / c[-1]
    centro = -monico[-2] / n
    radio = 1.0 + float(np.max(np.abs(monico[:-1])))
    escala = max(1.0, radio)
    residuos = None
    for intento in range(reinicios):
        fase = 0.4 if intento == 0 else float(rng.uniform(0, 2 * np.pi))
        ang = fase + 2 * np.pi * np.arange(n) / n
        z = centro + 0.5 * radio * np.exp(1j * ang)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            for _ in range(max_iter):
                dif = z[:, None] - z[None, :]
                np.fill_diagonal(dif, 1.0)
                paso = P.polyval(z, monico) / dif.prod(axis=1)
                if not np.all(np.isfinite(paso)):
                    break
                z = z - paso
                if np.max(np.abs(paso)) <= 1e-14 * escala:
                    break
                if np.max(np.abs(paso)) <= 1e-9 * escala and np.max(_error_hacia_atras(z, monico)) <= 1e-15:
                    break
        if np.all(np.isfinite(z)):
            residuos = _error_hacia_atras(z, monico)
            if np.max(residuos) <= 1e-12:
                return z
        logger.debug("Durand–Kerner sin convergencia (intento %d); reinicio con otra fase", intento)
    raise ErrorConvergencia(
        "la iteración de raíces no convergió",
        residuos=[] if residuos is None else [float(r) for r in residuos],
    )


def _radio_multiple(k, centro):
    """Dispersión esperable de k raíces iguales tras Durand–Kerner (≈ eps^(1/k))."""
    return max(RADIO_AGRUPAMIENTO, 10.0 * _EPS ** (1.0 / k)) * max(1.0, abs(centro))


def _centro_multiple(monico, c, k):
    """Raíz simple de p^(k-1) cerca de c; es el centro de una raíz k-uple de p."""
    q = P.polyder(monico, k - 1)
    dq = P.polyder(q)
    for _ in range(30):
        d = P.polyval(c, dq)
        if d == 0:
            break
        paso = P.polyval(c, q) / d
        c = c - paso
        if abs(paso) <= 1e-15 * max(1.0, abs(c)):
            break
    return complex(c)


def _agrupar(raices, coefs):
    """Raíces repetidas de p agrupadas: [(centro, multiplicidad)].

    Para cada semilla se prueban sus k vecinas más cercanas. El grupo se
    acepta si cabe en el radio de una raíz k-uple y el cero de p^(k-1) cerca
    de su media tiene error hacia atrás <= 1e-12 en p. Gana el k mayor.
    """
    c = np.trim_zeros(np.asarray(coefs, dtype=complex), "b")
    monico = c / c[-1]
    raices = np.asarray(raices, dtype=complex)
    restantes = list(range(raices.size))
    grupos = []
    while restantes:
        semilla = raices[restantes[0]]
        orden = sorted(restantes, key=lambda i: abs(raices[i] - semilla))
        miembros, centro = orden[:1], complex(semilla)
        for k in range(2, len(orden) + 1):
            candidatos = raices[orden[:k]]
            media = complex(np.mean(candidatos))
            radio = _radio_multiple(k, media)
            if np.max(np.abs(candidatos - media)) > radio:
                continue
            refinado = _centro_multiple(monico, media, k)
            if abs(refinado - media) > radio or not np.isfinite(refinado):
                continue
            if _error_hacia_atras(np.array([refinado]), monico)[0] > 1e-12:
                continue
            miembros, centro = orden[:k], refinado
        grupos.append((centro, len(miembros)))
        restantes = [i for i in restantes if i not in miembros]
    return grupos


def _ordenar_por_angulo(pares):
    return sorted(pares, key=lambda p: (round(float(np.angle(p[0])), 12), abs(p[0])))


def preimagenes(mapa: MapaPolinomial, w, generador=None, tol=None):
    """Raíces de f(z) - w con multiplicidad, ordenadas por argumento.

    La suma de multiplicidades es siempre deg(f). Cada raíz cumple
    |f(r) - w| < tol * max(1, |w|); si no, ErrorConvergencia con los residuos.
    """
    t = _tol_raiz() if tol is None else tol
    w = complex(w)
    coefs = mapa.arreglo.copy()
    coefs[0] -= w
    grupos = _agrupar(raices_polinomio(coefs, generador), coefs)
    pulidos = []
    for r, m in grupos:
        if m == 1:
            d = mapa.evaluar_derivada(r)
            if d != 0:
                r = r - (mapa(r) - w) / d
        pulidos.append((complex(r), m))
    residuos = [abs(mapa(r) - w) for r, _ in pulidos]
    if max(residuos) >= t * max(1.0, abs(w)):
        raise ErrorConvergencia(f"preimágenes de {w} fuera de tolerancia", residuos=residuos)
    return _ordenar_por_angulo(pulidos)


def puntos_criticos(mapa: MapaPolinomial, generador=None):
    """Raíces de f' agrupadas: [(c, multiplicidad)]."""
    return _ordenar_por_angulo(_agrupar(raices_polinomio(mapa.derivada(), generador), mapa.derivada()))


# ---------------------------------------------------------------------------
# Conjunto de Julia
# ---------------------------------------------------------------------------

def _escape_banda(mapa, z0, max_iter, radio):
    """Iteración de escape con derivada, para el estimador de distancia."""
    z = z0.copy()
    dz = np.ones_like(z)
    escapo = np.zeros(z.shape, dtype=bool)
    activo = np.ones(z.shape, dtype=bool)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for _ in range(max_iter):
            if not activo.any():
                break
            za = z[activo]
            dz[activo] = mapa.evaluar_derivada(za) * dz[activo]
            z[activo] = mapa(za)
            modulo = np.abs(z)
            escapo |= modulo > radio
            activo &= modulo <= 1e10
        modulo = np.abs(z)
        distancia = 0.5 * modulo * np.log(modulo) / np.abs(dz)
    distancia = np.where(escapo & np.isfinite(distancia), distancia, np.inf)
    return escapo, distancia


def conjunto_julia(mapa: MapaPolinomial, resolucion: int, max_iter: int, hilos: int = 1) -> ContinuoMalla:
    """Discretiza J_f en una malla resolucion x resolucion.

    Devuelve la mayor componente 8-conexa. `componentes` cuenta las
    componentes significativas (>= 1% de la mayor); más de una indica que la
    resolución no alcanza y se avisa en el log.
    """
    resolucion = asegurar_entero_minimo(resolucion, 64, "resolución")
    max_iter = asegurar_entero_minimo(max_iter, 1, "max_iter")
    medio = 1.1 * mapa.radio_julia() + 0.05
    ancho = 2.0 * medio / resolucion
    origen = complex(-medio + ancho / 2, -medio + ancho / 2)
    filas, cols = np.indices((resolucion, resolucion))
    z0 = origen + ancho * (cols + 1j * filas)
    radio = mapa.radio_escape()

    bandas = np.array_split(np.arange(resolucion), max(1, int(hilos)))
    if hilos > 1:
        with ThreadPoolExecutor(max_workers=int(hilos)) as pool:
            partes = list(pool.map(lambda b: _escape_banda(mapa, z0[b], max_iter, radio), bandas))
    else:
        partes = [_escape_banda(mapa, z0[b], max_iter, radio) for b in bandas]
    escapo = np.concatenate([p[0] for p in partes])
    distancia = np.concatenate([p[1] for p in partes])

    cerca = escapo & (distancia < ancho)
    borde_interior = ~escapo & ndimage.binary_dilation(escapo, structure=_OCHO_VECINOS)
    mascara = cerca | borde_interior
    etiquetas, n = ndimage.label(mascara, structure=_OCHO_VECINOS)
    if n == 0:
        raise ValueError("el conjunto de Julia quedó vacío a esta resolución")
    tamanos = np.bincount(etiquetas.ravel())[1:]
    mayor = int(np.argmax(tamanos)) + 1
    significativas = int(np.sum(tamanos >= max(4, 0.01 * tamanos.max())))
    if significativas > 1:
        logger.warning(
            "conjunto de Julia discretizado con %d componentes (resolución insuficiente)", significativas
        )
    logger.debug("Julia %s: %d celdas, ancho %.3g", mapa.como_texto(), int(tamanos.max()), ancho)
    return ContinuoMalla(
        origen,
        ancho,
        etiquetas == mayor,
        componentes=significativas,
        metadatos={
            "mapa": mapa.como_texto(),
            "resolucion": resolucion,
            "max_iter": max_iter,
            "componentes_totales": int(n),
        },
    )


# ---------------------------------------------------------------------------
# Órbitas críticas
# ---------------------------------------------------------------------------

@dataclass
class OrbitaCritica:
    punto: complex
    multiplicidad: int
    etiqueta: str
    muestra: List[complex]
    preperiodo: Optional[int] = None
    periodo: Optional[int] = None
    multiplicador: Optional[complex] = None


@dataclass
class InformeOrbitas:
    orbitas: List[OrbitaCritica]
    puntos_periodicos: List[dict] = field(default_factory=list)
    parabolico_sospechoso: bool = False
    semihiperbolico_candidato: bool = False
    clases: List[str] = field(default_factory=list)


def _multiplicador(mapa, ciclo):
    return complex(np.prod([mapa.evaluar_derivada(z) for z in ciclo]))


def _componer(mapa, veces):
    """Coeficientes de f∘…∘f (veces)."""
    resultado = np.array([0, 1], dtype=complex)
    for _ in range(veces):
        acumulado = np.array([mapa.coeficientes[-1]], dtype=complex)
        for c in reversed(mapa.coeficientes[:-1]):
            acumulado = P.polyadd(P.polymul(acumulado, resultado), [c])
        resultado = acumulado
    return resultado


def _puntos_periodicos(mapa, generador, periodo_max=2):
    """Puntos de periodo 1 y 2 con su multiplicador."""
    salida = []
    for p in range(1, periodo_max + 1):
        if mapa.grado ** p > 64:
            break
        coefs = P.polysub(_componer(mapa, p), [0, 1])
        for z, m in _agrupar(raices_polinomio(coefs, generador), coefs):
            ciclo = [z]
            for _ in range(p - 1):
                ciclo.append(mapa(ciclo[-1]))
            salida.append({"punto": z, "periodo": p, "multiplicidad": m, "multiplicador": _multiplicador(mapa, ciclo)})
    return salida


def _es_raiz_de_unidad(lam, tol=1e-6, orden_max=6):
    if abs(abs(lam) - 1.0) > tol:
        return False
    return any(abs(lam ** q - 1.0) < tol * q for q in range(1, orden_max + 1))


def _seguir_orbita(mapa, c, max_iter, tol, radio):
    orbita = [c]
    z = c
    for n in range(1, max_iter + 1):
        z = mapa(z)
        if not np.isfinite(abs(z)) or abs(z) > radio:
            orbita.append(z)
            return orbita, ESCAPA, {}
        distancias = np.abs(np.asarray(orbita) - z)
        coincide = np.flatnonzero(distancias < tol)
        if coincide.size:
            i = int(coincide[0])
            lam = _multiplicador(mapa, orbita[i:n])
            if i == 0:
                etiqueta = PERIODICA
            elif abs(lam) >= 1.0 - 1e-9:
                etiqueta = PREPERIODICA
            else:
                etiqueta = ATRAIDA
            orbita.append(z)
            return orbita, etiqueta, {"preperiodo": i, "periodo": n - i, "multiplicador": lam}
        orbita.append(z)

    # sin coincidencia exacta: convergencia lenta a un ciclo atractor
    cola = np.asarray(orbita)
    for p in range(1, 17):
        if cola.size > 2 * p and abs(cola[-1] - cola[-1 - p]) < 1e-6:
            lam = _multiplicador(mapa, list(cola[-p:]))
            if abs(lam) < 1.0 - 1e-6:
                return orbita, ATRAIDA, {"periodo": p, "multiplicador": lam}
            break
    regresos = np.abs(cola[PASOS_ANTES_DE_RECURRENCIA:] - c) < RADIO_RECURRENCIA
    if regresos.any():
        return orbita, RECURRENTE, {}
    return orbita, INDETERMINADA, {}


def clasificar_orbitas_criticas(mapa: MapaPolinomial, max_iter: int = 200, tol_orbita=None, generador=None) -> InformeOrbitas:
    """Etiqueta cada órbita crítica y resume la clase dinámica del mapa.

    "preperiodica" exige coincidencia exacta (dentro de tol_orbita) con un
    ciclo no atractor; un ciclo atractor alcanzado por aproximación queda como
    "atraida". Sin decisión tras max_iter la etiqueta es "indeterminada".
    """
    t = _tol_orbita() if tol_orbita is None else tol_orbita
    rng = _generador(generador)
    radio = mapa.radio_escape()
    orbitas = []
    for c, m in puntos_criticos(mapa, rng):
        muestra, etiqueta, detalle = _seguir_orbita(mapa, c, max_iter, t, radio)
        orbitas.append(OrbitaCritica(punto=c, multiplicidad=m, etiqueta=etiqueta, muestra=muestra[:64], **detalle))
        logger.debug("órbita crítica de %s: %s", c, etiqueta)

    periodicos = _puntos_periodicos(mapa, rng)
    parabolico = any(_es_raiz_de_unidad(p["multiplicador"]) for p in periodicos)
    etiquetas = {o.etiqueta for o in orbitas}

    clases = []
    if etiquetas <= {PERIODICA, ATRAIDA, ESCAPA} and not parabolico:
        clases.append("hiperbolico")
    if etiquetas <= {PERIODICA, PREPERIODICA}:
        clases.append("postcriticamente_finito")
    if etiquetas <= {PERIODICA, PREPERIODICA, ATRAIDA, ESCAPA} and not parabolico:
        clases.append("subhiperbolico")
    candidato = not parabolico and not (etiquetas & {RECURRENTE, INDETERMINADA})
    if candidato:
        clases.append("semihiperbolico_candidato")
    return InformeOrbitas(
        orbitas=orbitas,
        puntos_periodicos=periodicos,
        parabolico_sospechoso=parabolico,
        semihiperbolico_candidato=candidato,
        clases=clases,
    )


__all__ = [
    "evaluar",
    "grado_local",
    "raices_polinomio",
    "preimagenes",
    "puntos_criticos",
    "conjunto_julia",
    "clasificar_orbitas_criticas",
    "OrbitaCritica",
    "InformeOrbitas",
]
