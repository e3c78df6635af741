"""Servicios del análisis: orquestan el núcleo y devuelven {"ok", "datos", "error", "pasos"}."""

from .antena import escanear, estimar_dimension
from .chebyshev import tabla_chebyshev
from .cubrimiento import analizar_cubrimiento
from .julia import clasificar_continuo, generar_julia

__all__ = [
    "generar_julia",
    "clasificar_continuo",
    "escanear",
    "estimar_dimension",
    "tabla_chebyshev",
    "analizar_cubrimiento",
]
