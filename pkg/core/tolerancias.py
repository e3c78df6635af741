"""
tolerancias.py — Política de tolerancias numéricas unificada.

Propósito
- Unificar con qué holgura se comparan raíces, órbitas y geometría en todo
  el núcleo, igual que antes se unificaba el modo numérico.
- Tres tolerancias globales: raíz (|f(r) - w|), órbita (coincidencia de
  puntos de una órbita crítica) y geometría (separación de piernas).

API pública:
- configurar_tolerancias(tol_raiz=None, tol_orbita=None, tol_geom=None)
- tolerancias()
- restablecer_tolerancias()
- tol_raiz(), tol_orbita(), tol_geom()
- son_cercanos(a, b, tol=None), es_cero(x, tol=None)

Notas
- Este módulo no depende de Django.
- Los valores por defecto coinciden con los de config.settings.ANALISIS.
"""

import math

_POR_DEFECTO = {
    "tol_raiz": 1e-10,
    "tol_orbita": 1e-9,
    "tol_geom": 1e-6,
}

# --- Estado global mínimo -----------------------------------------------------
_actual = dict(_POR_DEFECTO)


def _asegurar_positiva(nombre, valor):
    v = float(valor)
    if not math.isfinite(v) or v <= 0:
        raise ValueError(f"la tolerancia '{nombre}' debe ser un real positivo")
    return v


def configurar_tolerancias(tol_raiz=None, tol_orbita=None, tol_geom=None):
    """Cambia las tolerancias globales; los argumentos None no se tocan."""
    nuevos = {"tol_raiz": tol_raiz, "tol_orbita": tol_orbita, "tol_geom": tol_geom}
    for nombre, valor in nuevos.items():
        if valor is not None:
            _actual[nombre] = _asegurar_positiva(nombre, valor)
    return tolerancias()


def restablecer_tolerancias():
    _actual.clear()
    _actual.update(_POR_DEFECTO)
    return tolerancias()


def tolerancias():
    """Copia del estado actual (dict serializable)."""
    return dict(_actual)


def tol_raiz():
    return _actual["tol_raiz"]


def tol_orbita():
    return _actual["tol_orbita"]


def tol_geom():
    return _actual["tol_geom"]


def son_cercanos(a, b, tol=None):
    """|a - b| <= tol (por defecto tol_raiz). Acepta reales o complejos."""
    t = tol_raiz() if tol is None else tol
    return abs(complex(a) - complex(b)) <= t


def es_cero(x, tol=None):
    t = tol_raiz() if tol is None else tol
    return abs(complex(x)) <= t


__all__ = [
    "configurar_tolerancias",
    "restablecer_tolerancias",
    "tolerancias",
    "tol_raiz",
    "tol_orbita",
    "tol_geom",
    "son_cercanos",
    "es_cero",
]
