"""cubrimiento.py — Jerarquía de cubrimientos por preimágenes y axiomas.

Propósito
---------
Sobre un continuo en malla s (típicamente un conjunto de Julia) con un
cubrimiento base U0 de abiertos conexos, el nivel n+1 se forma con las
componentes conexas de las preimágenes de los elementos del nivel n. Sobre
la jerarquía se verifican empíricamente la expansión (mesh → 0), el grado
acotado a lo largo de las cadenas y la irreducibilidad.

Funciones públicas
------------------
- imagen_en_malla(mapa, s) -> ImagenMalla
- cubrimiento_inicial(s, solape=0.1) -> [máscara]
- construir_jerarquia(mapa, s, u0=None, profundidad=4, hilos=1) -> JerarquiaCubrimiento
- verificar_expansion(h) -> InformeExpansion
- verificar_grado(h) -> InformeGrado
- verificar_irreducibilidad(mapa, s, w, max_n=64) -> int | None

Detalles de malla
-----------------
- f se discretiza como "celda de s más cercana a f(centro)" (transformada de
  distancia con índices). Las imágenes se dilatan una celda.
- Una celda cuya imagen cae fuera de la ventana o lejos de s (más de
  1 + |f'| + 0.75 celdas) es una falla de resolución; si una componente tiene
  más de 1% de esas celdas se lanza ErrorResolucion.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import ndimage

from .dinamica import preimagenes
from .errores import ErrorResolucion
from .geometria import diametro_puntos
from .tipos import ContinuoMalla, MapaPolinomial
from .utils import generador as _generador
from .validate import asegurar_conexa, asegurar_entero_minimo, asegurar_no_vacia

logger = logging.getLogger(__name__)

_OCHO_VECINOS = np.ones((3, 3), dtype=bool)
CELDAS_MINIMAS_COMPONENTE = 3
MUESTRAS_GRADO = 3

PASA = "pasa"
FALLA = "falla"
INSUFICIENTE = "profundidad_insuficiente"


# ---------------------------------------------------------------------------
# f sobre la malla
# ---------------------------------------------------------------------------

@dataclass
class ImagenMalla:
    """Imagen discreta: celda i de s (orden fila-mayor) -> índice plano de su imagen."""

    celdas: np.ndarray
    destino: np.ndarray
    defecto: np.ndarray

    def imagen(self, mascara: np.ndarray) -> np.ndarray:
        """f(mascara) como máscara (sin dilatar)."""
        plana = mascara.ravel()
        resultado = np.zeros(plana.size, dtype=bool)
        resultado[self.destino[plana[self.celdas]]] = True
        return resultado.reshape(mascara.shape)

    def preimagen(self, mascara: np.ndarray) -> np.ndarray:
        plana = np.zeros(mascara.size, dtype=bool)
        plana[self.celdas[mascara.ravel()[self.destino]]] = True
        return plana.reshape(mascara.shape)


def imagen_en_malla(mapa: MapaPolinomial, s: ContinuoMalla) -> ImagenMalla:
    n, m = s.forma
    filas, cols = np.nonzero(s.mascara)
    z = s.origen + s.ancho * (cols + 1j * filas)
    fz = mapa(z)
    fi, fj = s.indices_de(fz)
    fi_c, fj_c = np.clip(fi, 0, n - 1), np.clip(fj, 0, m - 1)
    distancia, (ind_f, ind_c) = ndimage.distance_transform_edt(~s.mascara, return_indices=True)
    destino = np.ravel_multi_index((ind_f[fi_c, fj_c], ind_c[fi_c, fj_c]), (n, m))
    holgura = 1.0 + np.abs(mapa.evaluar_derivada(z)) + 0.75
    defecto = (fi != fi_c) | (fj != fj_c) | (distancia[fi_c, fj_c] > holgura)
    return ImagenMalla(np.ravel_multi_index((filas, cols), (n, m)), destino, defecto)


def _dilatar(mascara, s):
    return ndimage.binary_dilation(mascara, structure=_OCHO_VECINOS) & s.mascara


# ---------------------------------------------------------------------------
# Jerarquía
# ---------------------------------------------------------------------------

@dataclass
class ElementoCubrimiento:
    nivel: int
    id: int
    celdas: np.ndarray = field(repr=False)
    imagen_id: Optional[int] = None
    grado: int = 1
    grado_cadena: int = 1

    def mascara(self, forma) -> np.ndarray:
        m = np.zeros(int(np.prod(forma)), dtype=bool)
        m[self.celdas] = True
        return m.reshape(forma)

    def caja(self, forma) -> List[int]:
        filas, cols = np.unravel_index(self.celdas, forma)
        return [int(filas.min()), int(cols.min()), int(filas.max()), int(cols.max())]


@dataclass
class JerarquiaCubrimiento:
    mapa: MapaPolinomial
    s: ContinuoMalla
    niveles: List[List[ElementoCubrimiento]]
    imagen: ImagenMalla = field(repr=False)

    @property
    def profundidad(self) -> int:
        return len(self.niveles) - 1

    def mascara(self, elemento: ElementoCubrimiento) -> np.ndarray:
        return elemento.mascara(self.s.forma)

    def centros(self, elemento: ElementoCubrimiento) -> np.ndarray:
        filas, cols = np.unravel_index(elemento.celdas, self.s.forma)
        return self.s.origen + self.s.ancho * (cols + 1j * filas)

    def diametro(self, elemento: ElementoCubrimiento) -> float:
        return diametro_puntos(self.centros(elemento))

    def no_cubiertas(self, nivel: int) -> int:
        cubierto = np.zeros(self.s.mascara.size, dtype=bool)
        for e in self.niveles[nivel]:
            cubierto[e.celdas] = True
        return int((self.s.mascara.ravel() & ~cubierto).sum())

    def exportar(self) -> List[dict]:
        forma = self.s.forma
        return [
            {
                "nivel": e.nivel,
                "id": e.id,
                "imagen_id": e.imagen_id,
                "grado": e.grado,
                "grado_cadena": e.grado_cadena,
                "caja": e.caja(forma),
                "celdas": int(e.celdas.size),
            }
            for nivel in self.niveles
            for e in nivel
        ]


def cubrimiento_inicial(s: ContinuoMalla, solape: float = 0.1) -> List[np.ndarray]:
    """Componentes de s en cuatro semiplanos solapados (izquierda, derecha, abajo, arriba).

    El solape es solape·diam(s) alrededor del centro de la caja de s. Se
    descartan las bandas que contienen todo s (pasa con un segmento horizontal).
    """
    z = s.malla_completa()
    puntos = s.centros()
    cx = (puntos.real.min() + puntos.real.max()) / 2
    cy = (puntos.imag.min() + puntos.imag.max()) / 2
    delta = solape * diametro_puntos(puntos)
    bandas = [z.real < cx + delta, z.real > cx - delta, z.imag < cy + delta, z.imag > cy - delta]
    elementos = []
    for banda in bandas:
        etiquetas, n = ndimage.label(banda & s.mascara, structure=_OCHO_VECINOS)
        elementos.extend(etiquetas == k for k in range(1, n + 1))
    propios = [e for e in elementos if np.any(s.mascara & ~e)]
    return propios or [s.mascara.copy()]


def _grado_elemento(mapa, h_s, componente_dilatada, imagen_celdas_centros, rng):
    muestras = imagen_celdas_centros[np.linspace(0, imagen_celdas_centros.size - 1, MUESTRAS_GRADO).astype(int)]
    mejor = 0
    for y in muestras:
        conteo = 0
        for p, mult in preimagenes(mapa, y, generador=rng):
            fi, fj = h_s.indices_de(p)
            if h_s.dentro(fi, fj) and componente_dilatada[fi, fj]:
                conteo += mult
        mejor = max(mejor, conteo)
    return max(1, mejor)


def _hijos(mapa, s, imagen, padre, forma, rng):
    mascara_padre = padre.mascara(forma)
    pre = imagen.preimagen(_dilatar(mascara_padre, s))
    etiquetas, n = ndimage.label(pre, structure=_OCHO_VECINOS)
    filas, cols = np.nonzero(mascara_padre)
    centros_padre = s.origen + s.ancho * (cols + 1j * filas)
    defecto_plano = np.zeros(s.mascara.size, dtype=bool)
    defecto_plano[imagen.celdas[imagen.defecto]] = True
    hijos = []
    for k in range(1, n + 1):
        componente = etiquetas == k
        celdas = np.flatnonzero(componente.ravel())
        if celdas.size < CELDAS_MINIMAS_COMPONENTE:
            logger.debug("componente de %d celdas descartada (nivel %d)", celdas.size, padre.nivel + 1)
            continue
        if defecto_plano[celdas].mean() > 0.01:
            raise ErrorResolucion(
                f"resolución limitada: la imagen de una componente de nivel {padre.nivel + 1} se sale de s"
            )
        grado = _grado_elemento(mapa, s, _dilatar(componente, s), centros_padre, rng)
        hijos.append((celdas, grado))
    return hijos


def construir_jerarquia(mapa: MapaPolinomial, s: ContinuoMalla, u0=None, profundidad: int = 4, hilos: int = 1, generador=None) -> JerarquiaCubrimiento:
    """Niveles 0..profundidad de componentes de preimágenes."""
    profundidad = asegurar_entero_minimo(profundidad, 0, "profundidad")
    u0 = cubrimiento_inicial(s) if u0 is None else [np.asarray(u, dtype=bool) & s.mascara for u in u0]
    for u in u0:
        asegurar_conexa(u, "elemento de U0")
    union = np.logical_or.reduce(u0)
    if np.any(s.mascara & ~union):
        raise ValueError("U0 no cubre el continuo")
    rng = _generador(generador)
    forma = s.forma
    imagen = imagen_en_malla(mapa, s)
    niveles = [[ElementoCubrimiento(0, i, np.flatnonzero(u.ravel())) for i, u in enumerate(u0)]]
    for nivel in range(1, profundidad + 1):
        padres = niveles[-1]
        # una semilla por padre, sacada del generador de la corrida
        semillas = [int(x) for x in rng.integers(0, 2**32, size=len(padres))]
        tareas = list(zip(padres, semillas))
        if hilos > 1:
            with ThreadPoolExecutor(max_workers=int(hilos)) as pool:
                resultados = list(pool.map(lambda t: _hijos(mapa, s, imagen, t[0], forma, _generador(t[1])), tareas))
        else:
            resultados = [_hijos(mapa, s, imagen, p, forma, _generador(x)) for p, x in tareas]
        nuevos = []
        for padre, hijos in zip(padres, resultados):
            for celdas, grado in hijos:
                nuevos.append(ElementoCubrimiento(nivel, len(nuevos), celdas, padre.id, grado, grado * padre.grado_cadena))
        niveles.append(nuevos)
        logger.debug("nivel %d: %d elementos", nivel, len(nuevos))
    h = JerarquiaCubrimiento(mapa, s, niveles, imagen)
    for nivel in range(h.profundidad + 1):
        faltan = h.no_cubiertas(nivel)
        if faltan:
            logger.warning("nivel %d no cubre %d celdas del continuo", nivel, faltan)
    return h


# ---------------------------------------------------------------------------
# Axiomas
# ---------------------------------------------------------------------------

@dataclass
class InformeExpansion:
    mallas: List[float]
    veredicto: str


def verificar_expansion(h: JerarquiaCubrimiento) -> InformeExpansion:
    """Diámetro máximo por nivel; pasa si la cola no crece y el último < mitad del primero."""
    mallas = [max((h.diametro(e) for e in nivel), default=0.0) for nivel in h.niveles]
    if h.profundidad <= 1:
        return InformeExpansion(mallas, INSUFICIENTE)
    cola = mallas[-3:]
    decrece = all(b <= a * (1 + 1e-9) for a, b in zip(cola, cola[1:]))
    return InformeExpansion(mallas, PASA if decrece and mallas[-1] < 0.5 * mallas[0] else FALLA)


@dataclass
class InformeGrado:
    por_nivel: List[int]
    maximo: int
    veredicto: str


def verificar_grado(h: JerarquiaCubrimiento) -> InformeGrado:
    """Máximo de deg(f^k: Ũ → U) por nivel; pasa si es constante en los 3 niveles más hondos."""
    por_nivel = [max((e.grado_cadena for e in nivel), default=0) for nivel in h.niveles]
    if h.profundidad < 2:
        return InformeGrado(por_nivel, max(por_nivel), INSUFICIENTE)
    cola = por_nivel[-3:]
    return InformeGrado(por_nivel, max(por_nivel), PASA if len(set(cola)) == 1 else FALLA)


def verificar_irreducibilidad(mapa: MapaPolinomial, s: ContinuoMalla, w: np.ndarray, max_n: int = 64) -> Optional[int]:
    """Menor n con f^n(w) = s en la malla (imágenes dilatadas una celda); None si no llega."""
    actual = asegurar_no_vacia(np.asarray(w, dtype=bool) & s.mascara, "w")
    imagen = imagen_en_malla(mapa, s)
    for n in range(max_n + 1):
        if not np.any(s.mascara & ~actual):
            return n
        actual = _dilatar(imagen.imagen(actual), s)
    logger.warning("f^n(w) no cubrió s en %d pasos", max_n)
    return None


__all__ = [
    "ImagenMalla",
    "imagen_en_malla",
    "ElementoCubrimiento",
    "JerarquiaCubrimiento",
    "cubrimiento_inicial",
    "construir_jerarquia",
    "InformeExpansion",
    "verificar_expansion",
    "InformeGrado",
    "verificar_grado",
    "verificar_irreducibilidad",
    "PASA",
    "FALLA",
    "INSUFICIENTE",
]
