"""format.py — Salida legible y determinista de resultados.

Objetivo
--------
Ofrecer funciones de formateo sencillas y explícitas para los informes:

- formatear_real(x, decimales=6): decimal recortado (sin ceros sobrantes).
- formatear_complejo(z, decimales=6): "a+bi" con la misma regla.
- a_serializable(obj): convierte complejos, numpy y dataclasses a tipos JSON;
  los complejos van como pares [re, im].
- a_json(datos): JSON UTF-8 con orden de claves estable.
- escribir_json(ruta, datos) / escribir_csv(ruta, encabezados, filas).

Notas de implementación
-----------------------
- Orden estable de claves y flotantes con repr corto: dos corridas con la
  misma configuración producen archivos idénticos byte a byte.
- CSV al estilo RFC 4180 (fin de línea CRLF, comillas mínimas).
"""

import csv
import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from .utils import a_par


def formatear_real(x, decimales=6):
    if x is None:
        return ""
    v = float(x)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    texto = f"{v:.{decimales}f}".rstrip("0").rstrip(".")
    return "0" if texto in ("-0", "") else texto


def formatear_complejo(z, decimales=6):
    z = complex(z)
    re = formatear_real(z.real, decimales)
    if z.imag == 0:
        return re
    im = formatear_real(abs(z.imag), decimales)
    im = "" if im == "1" else im
    if z.real == 0:
        return f"{'-' if z.imag < 0 else ''}{im}i"
    return f"{re}{'-' if z.imag < 0 else '+'}{im}i"


def a_serializable(obj):
    """Convierte recursivamente a estructuras que json entiende."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: a_serializable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): a_serializable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [a_serializable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.dtype == bool and obj.ndim == 2:
            return {"forma": list(obj.shape), "celdas": int(obj.sum())}
        return [a_serializable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return a_par(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, Path):
        return str(obj)
    return obj


def a_json(datos):
    return json.dumps(a_serializable(datos), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def escribir_json(ruta, datos):
    ruta = Path(ruta)
    ruta.parent.mkdir(parents=True, exist_ok=True)
    ruta.write_text(a_json(datos), encoding="utf-8")
    return ruta


def escribir_csv(ruta, encabezados, filas):
    ruta = Path(ruta)
    ruta.parent.mkdir(parents=True, exist_ok=True)
    with ruta.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(encabezados)
        for fila in filas:
            w.writerow([formatear_real(v, 12) if isinstance(v, (float, np.floating)) else v for v in fila])
    return ruta


__all__ = [
    "formatear_real",
    "formatear_complejo",
    "a_serializable",
    "a_json",
    "escribir_json",
    "escribir_csv",
]
