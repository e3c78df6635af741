"""almacenamiento.py — Persistencia de continuos en malla e imágenes PNG.

Formato binario
---------------
    cabecera  '<8sdddIII' : marca b"CMALLA01", origen.re, origen.im, ancho,
                            filas, columnas, componentes
    cuerpo                : máscara fila-mayor empaquetada en bits (np.packbits)

PNG: el conjunto en negro sobre blanco, con el eje imaginario hacia arriba.
La superposición dibuja los árboles de los certificados en rojo y el borde de
cada bola en azul.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

from .tipos import ContinuoMalla

MARCA = b"CMALLA01"
_CABECERA = struct.Struct("<8sdddIII")


def escribir_continuo(ruta, s: ContinuoMalla) -> Path:
    ruta = Path(ruta)
    ruta.parent.mkdir(parents=True, exist_ok=True)
    filas, cols = s.forma
    cabecera = _CABECERA.pack(MARCA, s.origen.real, s.origen.imag, s.ancho, filas, cols, s.componentes)
    ruta.write_bytes(cabecera + np.packbits(s.mascara, axis=None).tobytes())
    return ruta


def leer_continuo(ruta) -> ContinuoMalla:
    datos = Path(ruta).read_bytes()
    if len(datos) < _CABECERA.size:
        raise ValueError("archivo de continuo truncado")
    marca, re, im, ancho, filas, cols, componentes = _CABECERA.unpack_from(datos)
    if marca != MARCA:
        raise ValueError("no es un archivo de continuo (marca inválida)")
    bits = np.frombuffer(datos, dtype=np.uint8, offset=_CABECERA.size)
    if bits.size * 8 < filas * cols:
        raise ValueError("archivo de continuo truncado")
    mascara = np.unpackbits(bits, count=filas * cols).astype(bool).reshape(filas, cols)
    return ContinuoMalla(complex(re, im), ancho, mascara, componentes=componentes)


def _a_pixel(s: ContinuoMalla, z):
    w = (np.asarray(z, dtype=complex) - s.origen) / s.ancho
    return w.real, s.forma[0] - 1 - w.imag


def imagen_continuo(s: ContinuoMalla) -> Image.Image:
    return Image.fromarray(np.where(np.flipud(s.mascara), 0, 255).astype(np.uint8), mode="L")


def escribir_png(ruta, s: ContinuoMalla) -> Path:
    ruta = Path(ruta)
    ruta.parent.mkdir(parents=True, exist_ok=True)
    imagen_continuo(s).save(ruta, format="PNG")
    return ruta


def escribir_superposicion(ruta, s: ContinuoMalla, certificados) -> Path:
    """PNG del continuo (gris) con árboles (rojo) y bolas (azul) de los certificados."""
    ruta = Path(ruta)
    ruta.parent.mkdir(parents=True, exist_ok=True)
    base = np.where(np.flipud(s.mascara), 160, 255).astype(np.uint8)
    imagen = Image.fromarray(np.stack([base] * 3, axis=-1), mode="RGB")
    lapiz = ImageDraw.Draw(imagen)
    for cert in certificados:
        cx, cy = _a_pixel(s, cert.centro_bola)
        r = cert.radio_bola / s.ancho
        lapiz.ellipse([cx - r, cy - r, cx + r, cy + r], outline=(0, 0, 255))
        for pierna in cert.arbol.piernas:
            xs, ys = _a_pixel(s, pierna.vertices)
            lapiz.line(list(zip(xs.tolist(), ys.tolist())), fill=(255, 0, 0), width=1)
    imagen.save(ruta, format="PNG")
    return ruta


__all__ = [
    "MARCA",
    "escribir_continuo",
    "leer_continuo",
    "imagen_continuo",
    "escribir_png",
    "escribir_superposicion",
]
