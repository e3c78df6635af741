"""validate.py — Validaciones de precondiciones (fail-fast).

Objetivo
--------
Verificar rápidamente que las entradas cumplen lo que piden las operaciones
antes de lanzar cálculos costosos (iteraciones de escape, esqueletos,
jerarquías). Todas las funciones lanzan ValueError con un mensaje directo en
español y devuelven su entrada si todo está bien.

Funciones principales
---------------------
- asegurar_positivo(x, nombre)
- asegurar_entero_minimo(n, minimo, nombre)
- asegurar_potencia_de_dos(n, nombre)
- asegurar_abierto_unitario(c, nombre): c en (0, 1).
- asegurar_no_vacia(mascara, nombre)
- asegurar_conexa(mascara, nombre): 8-conexidad.
- asegurar_cuadrada(M): matriz numpy cuadrada.
- asegurar_impar(d)
"""

import math

import numpy as np
from scipy import ndimage

_OCHO_VECINOS = np.ones((3, 3), dtype=bool)


def asegurar_positivo(x, nombre="valor"):
    v = float(x)
    if not math.isfinite(v) or v <= 0:
        raise ValueError(f"{nombre} debe ser positivo")
    return x


def asegurar_entero_minimo(n, minimo, nombre="valor"):
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"{nombre} debe ser entero")
    if n < minimo:
        raise ValueError(f"{nombre} debe ser >= {minimo}")
    return int(n)


def asegurar_potencia_de_dos(n, nombre="resolución"):
    n = asegurar_entero_minimo(n, 1, nombre)
    if n & (n - 1):
        raise ValueError(f"{nombre} debe ser potencia de dos")
    return n


def asegurar_abierto_unitario(c, nombre="c"):
    v = float(c)
    if not (0.0 < v < 1.0):
        raise ValueError(f"{nombre} debe estar en (0, 1)")
    return v


def asegurar_impar(d, nombre="d"):
    d = asegurar_entero_minimo(d, 1, nombre)
    if d % 2 == 0:
        raise ValueError(f"{nombre} debe ser impar")
    return d


def asegurar_no_vacia(mascara, nombre="conjunto"):
    if not np.any(mascara):
        raise ValueError(f"{nombre} vacío")
    return mascara


def asegurar_conexa(mascara, nombre="conjunto"):
    asegurar_no_vacia(mascara, nombre)
    _, n = ndimage.label(mascara, structure=_OCHO_VECINOS)
    if n != 1:
        raise ValueError(f"{nombre} no es conexo ({n} componentes)")
    return mascara


def asegurar_cuadrada(M):
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError("la matriz debe ser cuadrada y no vacía")
    return A


__all__ = [
    "asegurar_positivo",
    "asegurar_entero_minimo",
    "asegurar_potencia_de_dos",
    "asegurar_abierto_unitario",
    "asegurar_impar",
    "asegurar_no_vacia",
    "asegurar_conexa",
    "asegurar_cuadrada",
]
