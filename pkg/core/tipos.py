"""tipos.py — Tipos de dominio del núcleo.

- MapaPolinomial: polinomio complejo f (coeficientes ascendentes, grado >= 2).
- Poligonal: camino discretizado (vértices complejos).
- ArbolY: tres piernas poligonales que salen de un mismo centro.
- ContinuoMalla: continuo plano discretizado en celdas de una malla.

Los puntos del plano se representan con `complex` de Python o arreglos
complejos de numpy; el JSON los lleva como pares [re, im].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P


@dataclass(frozen=True)
class MapaPolinomial:
    coeficientes: Tuple[complex, ...]

    def __post_init__(self):
        coefs = tuple(complex(c) for c in self.coeficientes)
        if len(coefs) < 3:
            raise ValueError("el mapa debe tener grado >= 2")
        if coefs[-1] == 0:
            raise ValueError("el coeficiente principal debe ser no nulo")
        if not all(np.isfinite(c.real) and np.isfinite(c.imag) for c in coefs):
            raise ValueError("coeficientes no finitos")
        object.__setattr__(self, "coeficientes", coefs)

    @property
    def grado(self) -> int:
        return len(self.coeficientes) - 1

    @property
    def arreglo(self) -> np.ndarray:
        return np.array(self.coeficientes, dtype=complex)

    def __call__(self, z):
        """Horner; funciona con escalares y arreglos."""
        acumulado = np.zeros_like(np.asarray(z, dtype=complex)) + self.coeficientes[-1]
        for c in reversed(self.coeficientes[:-1]):
            acumulado = acumulado * z + c
        if np.ndim(acumulado) == 0:
            return complex(acumulado)
        return acumulado

    def derivada(self, orden: int = 1) -> np.ndarray:
        """Coeficientes ascendentes de f^(orden)."""
        return P.polyder(self.arreglo, orden)

    def evaluar_derivada(self, z, orden: int = 1):
        coefs = self.derivada(orden)
        if coefs.size == 0:
            return np.zeros_like(np.asarray(z, dtype=complex))
        return P.polyval(z, coefs)

    def radio_escape(self) -> float:
        return max(2.0, 2.0 * max(abs(c) for c in self.coeficientes))

    def radio_julia(self) -> float:
        """Radio r tal que |f(z)| > |z| para todo |z| > r (cota del conjunto de Julia)."""
        a = abs(self.coeficientes[-1])
        resto = [abs(c) for c in self.coeficientes[:-1]]
        r = 1e-3
        while a * r ** self.grado - sum(c * r ** k for k, c in enumerate(resto)) <= r:
            r *= 1.01
        return r

    def como_texto(self) -> str:
        def lit(c):
            return f"{c.real:g}{c.imag:+g}i" if c.imag else f"{c.real:g}"
        return "poly: " + ", ".join(lit(c) for c in self.coeficientes)


@dataclass(frozen=True)
class Poligonal:
    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex).ravel()
        if v.size < 2:
            raise ValueError("una poligonal necesita al menos 2 vértices")
        if np.any(np.abs(np.diff(v)) == 0):
            raise ValueError("vértices consecutivos repetidos en la poligonal")
        object.__setattr__(self, "vertices", v)

    @property
    def inicio(self) -> complex:
        return complex(self.vertices[0])

    @property
    def fin(self) -> complex:
        return complex(self.vertices[-1])

    @property
    def largo(self) -> float:
        return float(np.abs(np.diff(self.vertices)).sum())

    def __len__(self):
        return self.vertices.size


@dataclass(frozen=True)
class ArbolY:
    centro: complex
    piernas: Tuple[Poligonal, Poligonal, Poligonal]

    def __post_init__(self):
        if len(self.piernas) != 3:
            raise ValueError("un árbol Y tiene exactamente 3 piernas")
        object.__setattr__(self, "centro", complex(self.centro))
        object.__setattr__(self, "piernas", tuple(self.piernas))

    @property
    def puntas(self) -> Tuple[complex, complex, complex]:
        return tuple(p.fin for p in self.piernas)

    def vertices(self) -> np.ndarray:
        return np.concatenate([p.vertices for p in self.piernas])

    def transformar(self, a: complex, b: complex = 0) -> "ArbolY":
        """Imagen por la semejanza z -> a z + b."""
        return ArbolY(a * self.centro + b, tuple(Poligonal(a * p.vertices + b) for p in self.piernas))


@dataclass
class ContinuoMalla:
    """Conjunto de celdas de una malla cuadrada.

    La celda (fila i, columna j) tiene centro origen + ancho * (j + i*1j).
    `mascara` es un arreglo booleano (filas, columnas).
    """

    origen: complex
    ancho: float
    mascara: np.ndarray
    componentes: int = 1
    metadatos: dict = field(default_factory=dict)

    def __post_init__(self):
        self.origen = complex(self.origen)
        self.ancho = float(self.ancho)
        self.mascara = np.asarray(self.mascara, dtype=bool)
        if self.ancho <= 0:
            raise ValueError("el ancho de celda debe ser positivo")
        if self.mascara.ndim != 2:
            raise ValueError("la máscara debe ser 2D")

    @property
    def forma(self):
        return self.mascara.shape

    @property
    def numero_celdas(self) -> int:
        return int(self.mascara.sum())

    def centros(self, mascara: Optional[np.ndarray] = None) -> np.ndarray:
        """Centros complejos de las celdas marcadas (orden fila-mayor)."""
        m = self.mascara if mascara is None else mascara
        filas, cols = np.nonzero(m)
        return self.origen + self.ancho * (cols + 1j * filas)

    def malla_completa(self) -> np.ndarray:
        filas, cols = np.indices(self.forma)
        return self.origen + self.ancho * (cols + 1j * filas)

    def indices_de(self, z):
        """(fila, columna) de la celda más cercana; puede caer fuera de la malla."""
        w = (np.asarray(z, dtype=complex) - self.origen) / self.ancho
        return np.rint(w.imag).astype(int), np.rint(w.real).astype(int)

    def dentro(self, filas, cols):
        n, m = self.forma
        return (filas >= 0) & (filas < n) & (cols >= 0) & (cols < m)

    def con_mascara(self, mascara: np.ndarray) -> "ContinuoMalla":
        return ContinuoMalla(self.origen, self.ancho, mascara)
