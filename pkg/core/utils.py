"""utils.py — Utilidades compartidas de estructuras.

Propósito
---------
Reunir pequeñas funciones reutilizables usadas por varios módulos del core,
para mantener una semántica uniforme al pasar entre complejos, pares [re, im]
y arreglos de numpy.

Funciones
---------
- es_secuencia(obj): True si obj es list o tuple (y no es str).
- a_par(z): complejo -> [re, im] (formato de los JSON).
- de_par(p): [re, im] | número -> complex.
- a_complejos(v): secuencia de complejos/pares -> np.ndarray complejo 1D.
- generador(semilla): np.random.Generator sembrado (única fuente de azar).
"""

from typing import Any, List

import numpy as np


def es_secuencia(obj: Any) -> bool:
    """True si es list o tuple (excluye cadenas)."""
    if isinstance(obj, str):
        return False
    return isinstance(obj, (list, tuple))


def a_par(z) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def de_par(p) -> complex:
    """Acepta [re, im], (re, im) o un número."""
    if es_secuencia(p):
        if len(p) != 2:
            raise ValueError("un punto debe ser un par [re, im]")
        return complex(float(p[0]), float(p[1]))
    return complex(p)


def a_complejos(v) -> np.ndarray:
    """Convierte puntos sueltos o pares a un arreglo complejo 1D."""
    if isinstance(v, np.ndarray) and np.iscomplexobj(v):
        return v.ravel()
    if es_secuencia(v) and len(v) > 0 and es_secuencia(v[0]):
        return np.array([de_par(p) for p in v], dtype=complex)
    return np.asarray(v, dtype=complex).ravel()


def generador(semilla=0):
    """Generador sembrado; si ya es un Generator lo devuelve tal cual."""
    if isinstance(semilla, np.random.Generator):
        return semilla
    return np.random.default_rng(semilla)


__all__ = [
    "es_secuencia",
    "a_par",
    "de_par",
    "a_complejos",
    "generador",
]
