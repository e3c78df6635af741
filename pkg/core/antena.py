"""antena.py — Antenas, escaneo de antenas y dimensión.

Propósito
---------
Una c-antena de una región U es un árbol Y dentro de U cuyas tres puntas
quedan, cada una, a distancia >= c·diam(U) de las otras dos piernas. Este
módulo mide esa constante, busca antenas en bolas de un continuo, escanea
muchas bolas a varias escalas y acompaña el resultado con la cota de
dimensión correspondiente (forma simbólica) y una dimensión por cajas.

API pública
-----------
- constante_antena(arbol, diametro_region) -> float
- buscar_antena(s, mascara_bola, c_min, ...) -> CertificadoAntena | None
- revalidar_certificado(certificado, s) -> dict
- propagar_antena(mapa, arbol, niveles=5) -> InformePropagacion
- escanear_antenas(s, n_escalas, n_centros, c_min, ...) -> InformeEscaneo
- cota_azzam(c, b=None) -> CotaAzzam
- dimension_por_cajas(s, caja_min=2, caja_max=None, adelgazar=None) -> InformeDimension

Notas
-----
- "None" en buscar_antena significa "no encontrada a esta resolución".
- La constante b de la cota nunca se inventa: sin b la cota es simbólica.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import ndimage, stats
from scipy.spatial import cKDTree
from skimage.morphology import skeletonize

from .errores import ErrorResolucion
from .esqueleto import esqueletizar
from .format import formatear_real
from .geometria import bola, diametro, diametro_puntos, ramas_incidentes
from .levantamiento import distancia_punto_segmento, iterar_levantamientos, problemas_arbol
from .tipos import ArbolY, ContinuoMalla, Poligonal
from .utils import generador as _generador
from .validate import asegurar_abierto_unitario, asegurar_entero_minimo, asegurar_positivo

logger = logging.getLogger(__name__)

CELDAS_MINIMAS = 8
ESCALAS_MINIMAS = 5

OK = "ok"
SIN_ANTENA = "sin_antena"
RESOLUCION = "resolucion"

ANTENA_EN_TODAS = "antena_en_todas_las_escalas"
SIN_ANTENA_EN_NINGUNA = "sin_antena_en_ninguna_escala"
PARCIAL = "parcial"


# ---------------------------------------------------------------------------
# Constante de antena
# ---------------------------------------------------------------------------

def _distancia_a_poligonal(p, vertices) -> float:
    return float(np.min(distancia_punto_segmento(p, vertices[:-1], vertices[1:])))


def constante_antena(arbol: ArbolY, diametro_region: float) -> float:
    """min_i dist(punta_i, pierna_j ∪ pierna_k) / diametro_region."""
    asegurar_positivo(diametro_region, "diámetro de la región")
    peor = np.inf
    for i in range(3):
        punta = arbol.piernas[i].fin
        otras = [arbol.piernas[j].vertices for j in range(3) if j != i]
        peor = min(peor, min(_distancia_a_poligonal(punta, v) for v in otras))
    return float(peor / diametro_region)


# ---------------------------------------------------------------------------
# Búsqueda en una bola
# ---------------------------------------------------------------------------

@dataclass
class CertificadoAntena:
    centro_bola: complex
    radio_bola: float
    arbol: ArbolY
    c: float
    diametro_region: float
    mascara: np.ndarray = field(repr=False)


def _recorte(s: ContinuoMalla, mascara: np.ndarray):
    """Sub-malla mínima (con una celda de margen) que contiene la máscara."""
    filas, cols = np.nonzero(mascara)
    f0, f1 = max(0, filas.min() - 1), min(s.forma[0], filas.max() + 2)
    c0, c1 = max(0, cols.min() - 1), min(s.forma[1], cols.max() + 2)
    origen = s.origen + s.ancho * (c0 + 1j * f0)
    return ContinuoMalla(origen, s.ancho, mascara[f0:f1, c0:c1])


def _extender(esq, centro, camino, usados):
    """Prolonga una rama siguiendo, en cada vértice, la arista que más se aleja de `centro`."""
    G = esq.grafo
    actual = None
    for n in G.nodes:
        if G.nodes[n]["punto"] == camino[-1]:
            actual = n
            break
    partes = [camino]
    while actual is not None and actual not in usados and G.degree(actual) >= 2:
        usados.add(actual)
        mejor = None
        for a, b, k in G.edges(actual, keys=True):
            otro = b if a == actual else a
            if otro in usados or a == b:
                continue
            tramo = esq.camino_desde(a, b, k, actual)
            if mejor is None or abs(tramo[-1] - centro) > abs(mejor[1][-1] - centro):
                mejor = (otro, tramo)
        if mejor is None:
            break
        actual, tramo = mejor
        partes.append(tramo[1:])
    return np.concatenate(partes)


def _candidatas(esq, v):
    centro = esq.grafo.nodes[v]["punto"]
    ramas = ramas_incidentes(esq, v)
    variantes = []
    for r in ramas:
        extendida = _extender(esq, centro, r, {v})
        variantes.append([r] if extendida.size == r.size else [r, extendida])
    return centro, variantes


def buscar_antena(s: ContinuoMalla, mascara_bola: np.ndarray, c_min: float, largo_poda=None, centro_bola=None, radio_bola=None) -> Optional[CertificadoAntena]:
    """Mejor antena en bola ∩ s sobre las ramas del esqueleto; None si c < c_min."""
    region = np.asarray(mascara_bola, dtype=bool) & s.mascara
    if region.sum() < CELDAS_MINIMAS:
        raise ErrorResolucion(f"resolución limitada: la bola tiene menos de {CELDAS_MINIMAS} celdas")
    sub = _recorte(s, region)
    diam = diametro(sub)
    try:
        esq = esqueletizar(sub, largo_poda)
    except ValueError:
        return None
    tol = s.ancho * 1e-3
    mejor = None
    for v in esq.ramificaciones:
        centro, variantes = _candidatas(esq, v)
        for trio in itertools.combinations(range(len(variantes)), 3):
            for eleccion in itertools.product(*(variantes[i] for i in trio)):
                try:
                    arbol = ArbolY(centro, tuple(Poligonal(r) for r in eleccion))
                except ValueError:
                    continue
                c = constante_antena(arbol, diam)
                if (mejor is None or c > mejor[0]) and not problemas_arbol(arbol, tol):
                    mejor = (c, arbol)
    if mejor is None or mejor[0] < c_min:
        return None
    c, arbol = mejor
    if centro_bola is None:
        centro_bola = complex(np.mean(s.centros(region)))
    if radio_bola is None:
        radio_bola = diam / 2
    return CertificadoAntena(complex(centro_bola), float(radio_bola), arbol, c, diam, region)


def revalidar_certificado(certificado: CertificadoAntena, s: ContinuoMalla) -> dict:
    """Recalcula c y la contención del árbol en la bola, sin reutilizar la búsqueda."""
    centros = s.centros(certificado.mascara)
    diam = diametro_puntos(centros)
    c = constante_antena(certificado.arbol, diam)
    distancias, _ = cKDTree(np.column_stack([centros.real, centros.imag])).query(
        np.column_stack([certificado.arbol.vertices().real, certificado.arbol.vertices().imag])
    )
    contenido = bool(np.all(distancias <= s.ancho * np.sqrt(0.5) + 1e-12))
    coincide = abs(c - certificado.c) <= 1e-12
    return {"c": c, "coincide": coincide, "contenido": contenido, "valido": coincide and contenido and c > 0}


# ---------------------------------------------------------------------------
# Propagación por levantamientos
# ---------------------------------------------------------------------------

@dataclass
class InformePropagacion:
    c_base: float
    por_nivel: List[float]
    arboles_por_nivel: List[int]
    kappa: float


def _c_propia(arbol: ArbolY) -> float:
    return constante_antena(arbol, diametro_puntos(arbol.vertices()))


def propagar_antena(mapa, arbol: ArbolY, niveles: int = 5, presupuesto: int = 16, generador=None) -> InformePropagacion:
    """c de los levantamientos de `arbol` por f^n, n = 1..niveles.

    Cada árbol se mide contra el diámetro de sus propios vértices. `kappa`
    es el menor cociente c_n / c_base observado.
    """
    niveles = asegurar_entero_minimo(niveles, 1, "niveles")
    rng = _generador(generador)
    c_base = _c_propia(arbol)
    actuales = [arbol]
    por_nivel, cantidades = [], []
    for _ in range(niveles):
        siguientes = []
        for a in actuales:
            siguientes.extend(iterar_levantamientos(mapa, a, 1, generador=rng))
            if len(siguientes) >= presupuesto:
                break
        actuales = siguientes[:presupuesto]
        por_nivel.append(min(_c_propia(a) for a in actuales))
        cantidades.append(len(actuales))
    kappa = min(por_nivel) / c_base if c_base > 0 else 0.0
    logger.debug("propagación: c_base=%.4g, kappa=%.4g", c_base, kappa)
    return InformePropagacion(c_base, por_nivel, cantidades, float(kappa))


# ---------------------------------------------------------------------------
# Escaneo
# ---------------------------------------------------------------------------

@dataclass
class CotaAzzam:
    c: float
    forma: str
    valor: Optional[float] = None
    degenerada: bool = False


def cota_azzam(c, b=None) -> CotaAzzam:
    """Cota de dimensión hdim > 1 + b·c². Numérica sólo si se da b."""
    c = asegurar_abierto_unitario(c, "c")
    c2 = c * c
    forma = f"hdim > 1 + b·{formatear_real(c2, 12)}"
    valor = None
    if b is not None:
        b = float(asegurar_positivo(b, "b"))
        valor = 1.0 + b * c2
    degenerada = c2 < 1e-6
    if degenerada:
        logger.warning("c=%g: la cota degenera a hdim > 1", c)
    return CotaAzzam(c, forma, valor, degenerada)


@dataclass
class InformeEscaneo:
    escalas: List[float]
    centros: List[complex]
    filas: List[dict]
    peor_por_escala: List[Optional[float]]
    inf_global: Optional[float]
    fallas: List[dict]
    veredicto: str
    cota: Optional[CotaAzzam] = None
    certificados: List[CertificadoAntena] = field(default_factory=list, repr=False)


def muestrear_centros(s: ContinuoMalla, n: int, generador=None, max_candidatos=20000) -> np.ndarray:
    """n celdas de s repartidas por muestreo del punto más lejano (sembrado)."""
    rng = _generador(generador)
    centros = s.centros()
    if centros.size > max_candidatos:
        centros = centros[np.sort(rng.choice(centros.size, max_candidatos, replace=False))]
    n = min(n, centros.size)
    elegidos = [int(rng.integers(centros.size))]
    distancia = np.abs(centros - centros[elegidos[0]])
    while len(elegidos) < n:
        k = int(np.argmax(distancia))
        elegidos.append(k)
        distancia = np.minimum(distancia, np.abs(centros - centros[k]))
    return centros[elegidos]


def _evaluar_bola(s, x, r, c_min, largo_poda):
    try:
        mascara = bola(s, x, r)
        cert = buscar_antena(s, mascara, c_min, largo_poda, centro_bola=x, radio_bola=r)
    except ErrorResolucion:
        return RESOLUCION, None
    return (OK, cert) if cert is not None else (SIN_ANTENA, None)


def escanear_antenas(s: ContinuoMalla, n_escalas: int = 4, n_centros: int = 16, c_min: float = 1e-3, generador=None, largo_poda=None, hilos: int = 1) -> InformeEscaneo:
    """Busca antenas en n_centros bolas por escala, radios geométricos en [8·ancho, diam/2]."""
    n_escalas = asegurar_entero_minimo(n_escalas, 2, "número de escalas")
    n_centros = asegurar_entero_minimo(n_centros, 1, "número de centros")
    diam = diametro(s)
    r_min, r_max = CELDAS_MINIMAS * s.ancho, diam / 2
    if r_max <= r_min:
        raise ErrorResolucion("resolución limitada: el continuo es demasiado chico para escanear")
    escalas = np.geomspace(r_min, r_max, n_escalas)
    centros = muestrear_centros(s, n_centros, generador)
    trabajos = [(i, j, r, x) for i, r in enumerate(escalas) for j, x in enumerate(centros)]

    def correr(t):
        return _evaluar_bola(s, t[3], t[2], c_min, largo_poda)

    if hilos > 1:
        with ThreadPoolExecutor(max_workers=int(hilos)) as pool:
            resultados = list(pool.map(correr, trabajos))
    else:
        resultados = [correr(t) for t in trabajos]

    filas, fallas, certificados = [], [], []
    peor = [None] * n_escalas
    for (i, j, r, x), (estado, cert) in zip(trabajos, resultados):
        c = cert.c if cert is not None else None
        filas.append({"escala": float(r), "centro": complex(x), "c": c, "estado": estado})
        if cert is None:
            fallas.append({"escala": float(r), "centro": complex(x), "estado": estado})
            continue
        certificados.append(cert)
        peor[i] = c if peor[i] is None else min(peor[i], c)
    encontrados = [p for p in peor if p is not None]
    inf_global = min(encontrados) if encontrados else None
    if not certificados:
        veredicto = SIN_ANTENA_EN_NINGUNA
    elif not fallas:
        veredicto = ANTENA_EN_TODAS
    else:
        veredicto = PARCIAL
    cota = cota_azzam(inf_global) if inf_global is not None and 0 < inf_global < 1 else None
    logger.info("escaneo: %d bolas, %d fallas, inf c = %s", len(filas), len(fallas), inf_global)
    return InformeEscaneo(
        escalas=[float(r) for r in escalas],
        centros=[complex(x) for x in centros],
        filas=filas,
        peor_por_escala=peor,
        inf_global=inf_global,
        fallas=fallas,
        veredicto=veredicto,
        cota=cota,
        certificados=certificados,
    )


# ---------------------------------------------------------------------------
# Dimensión por cajas
# ---------------------------------------------------------------------------

ADVERTENCIA_CAJAS = "la dimensión por cajas acota por arriba a la de Hausdorff"


@dataclass
class InformeDimension:
    estimacion: float
    r2: float
    residuos: List[float]
    lados: List[float]
    conteos: List[int]
    adelgazado: bool
    advertencia: str = ADVERTENCIA_CAJAS


def _sin_interior(mascara) -> bool:
    erosionada = ndimage.binary_erosion(mascara, structure=np.ones((3, 3), dtype=bool))
    return erosionada.sum() < 0.5 * mascara.sum()


def _contar_cajas(mascara, k) -> int:
    n, m = mascara.shape
    relleno = np.zeros((-(-n // k) * k, -(-m // k) * k), dtype=bool)
    relleno[:n, :m] = mascara
    bloques = relleno.reshape(relleno.shape[0] // k, k, relleno.shape[1] // k, k)
    return int(bloques.any(axis=(1, 3)).sum())


def dimension_por_cajas(s: ContinuoMalla, caja_min: int = 2, caja_max=None, adelgazar=None) -> InformeDimension:
    """Pendiente de log N(ε) contra log(1/ε) con cajas diádicas de caja_min a caja_max celdas.

    `adelgazar=None` adelgaza (esqueleto) sólo si el conjunto no tiene
    interior a la escala de la malla.
    """
    mascara = s.mascara
    if adelgazar is None:
        adelgazar = _sin_interior(mascara)
    if adelgazar:
        mascara = skeletonize(mascara)
    if caja_max is None:
        caja_max = max(s.forma) // 8
    lados = []
    k = max(1, int(caja_min))
    while k <= caja_max:
        lados.append(k)
        k *= 2
    if len(lados) < ESCALAS_MINIMAS:
        raise ErrorResolucion(f"resolución limitada: {len(lados)} escalas diádicas (se necesitan {ESCALAS_MINIMAS})")
    conteos = [_contar_cajas(mascara, k) for k in lados]
    x = np.log(1.0 / (np.array(lados) * s.ancho))
    y = np.log(np.array(conteos, dtype=float))
    ajuste = stats.linregress(x, y)
    residuos = y - (ajuste.intercept + ajuste.slope * x)
    return InformeDimension(
        estimacion=float(ajuste.slope),
        r2=float(ajuste.rvalue ** 2),
        residuos=[float(r) for r in residuos],
        lados=[float(k * s.ancho) for k in lados],
        conteos=conteos,
        adelgazado=bool(adelgazar),
    )


__all__ = [
    "constante_antena",
    "CertificadoAntena",
    "buscar_antena",
    "revalidar_certificado",
    "InformePropagacion",
    "propagar_antena",
    "CotaAzzam",
    "cota_azzam",
    "InformeEscaneo",
    "muestrear_centros",
    "escanear_antenas",
    "InformeDimension",
    "dimension_por_cajas",
]
