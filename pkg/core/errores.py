"""errores.py — Jerarquía de errores del núcleo.

Todas las clases derivan de ValueError, de modo que el código que ya captura
ValueError (validaciones, servicios) las sigue tratando igual. Las subclases
existen para que el llamador distinga "no encontrado a esta resolución" de
"la resolución no alcanza", o una rama ambigua de una falla de convergencia.
"""


class ErrorConvergencia(ValueError):
    """Una iteración no convergió; `residuos` guarda lo último observado."""

    def __init__(self, mensaje, residuos=None):
        super().__init__(mensaje)
        self.residuos = list(residuos) if residuos is not None else []


class ErrorRamaAmbigua(ValueError):
    """La continuación de rama inversa no pudo decidir entre dos preimágenes."""

    def __init__(self, mensaje, parametro=None):
        super().__init__(mensaje)
        self.parametro = parametro


class ErrorResolucion(ValueError):
    """La malla es demasiado gruesa para el objeto pedido."""


class ErrorLevantamiento(ValueError):
    """Las piernas levantadas de un árbol Y chocan entre sí."""


class ErrorPatron(ValueError):
    """El entrelazado de preimágenes de los extremos no es el esperado."""


class ErrorProfundidad(ValueError):
    """La jerarquía de cubrimientos no tiene niveles suficientes."""


__all__ = [
    "ErrorConvergencia",
    "ErrorRamaAmbigua",
    "ErrorResolucion",
    "ErrorLevantamiento",
    "ErrorPatron",
    "ErrorProfundidad",
]
