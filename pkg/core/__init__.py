"""Core numérico del proyecto.

Expone los tipos de dominio, la política de tolerancias y las operaciones de
dinámica, levantamiento, geometría, antenas, Chebyshev y cubrimientos. No
depende de Django.
"""

from .tolerancias import (
    configurar_tolerancias,
    restablecer_tolerancias,
    tolerancias,
    son_cercanos,
    es_cero,
)
from .errores import (
    ErrorConvergencia,
    ErrorRamaAmbigua,
    ErrorResolucion,
    ErrorLevantamiento,
    ErrorPatron,
    ErrorProfundidad,
)
from .tipos import (
    MapaPolinomial,
    Poligonal,
    ArbolY,
    ContinuoMalla,
)
from .parse import (
    parsear_complejo,
    parsear_mapa,
    parsear_configuracion,
    parsear_rango,
)
from .format import (
    formatear_real,
    formatear_complejo,
    a_json,
    escribir_json,
    escribir_csv,
)
from .steps import (
    Steps,
)
from .dinamica import (
    evaluar,
    grado_local,
    preimagenes,
    conjunto_julia,
    clasificar_orbitas_criticas,
)
from .levantamiento import (
    levantar_camino,
    levantar_arbol,
    iterar_levantamientos,
    proyectar_nivel,
    validar_arbol,
)
from .esqueleto import (
    GrafoEsqueleto,
    esqueletizar,
)
from .geometria import (
    ClaseTopologica,
    diametro,
    bola,
    redondez,
    clasificar,
    extraer_arbol,
    componentes_al_remover,
)
from .antena import (
    CertificadoAntena,
    constante_antena,
    buscar_antena,
    revalidar_certificado,
    escanear_antenas,
    cota_azzam,
    dimension_por_cajas,
)
from .chebyshev import (
    MapaIntervalo,
    chebyshev,
    chebyshev_negado,
    estructura_preimagenes_extremos,
    incidencia_markov,
    numero_crecimiento,
    verificar_modelo_pl,
    verificar_proyeccion_circulo,
    clasificar_mapa_intervalo,
)
from .cubrimiento import (
    ElementoCubrimiento,
    JerarquiaCubrimiento,
    cubrimiento_inicial,
    construir_jerarquia,
    verificar_expansion,
    verificar_grado,
    verificar_irreducibilidad,
)
from .metricas import (
    metrica_visual,
    estimar_metrica_visual,
    verificar_distorsion,
    verificar_homotecia,
    estimar_modulo_qs,
)
from .almacenamiento import (
    escribir_continuo,
    leer_continuo,
    escribir_png,
)

__all__ = [
    "configurar_tolerancias",
    "restablecer_tolerancias",
    "tolerancias",
    "son_cercanos",
    "es_cero",
    "ErrorConvergencia",
    "ErrorRamaAmbigua",
    "ErrorResolucion",
    "ErrorLevantamiento",
    "ErrorPatron",
    "ErrorProfundidad",
    "MapaPolinomial",
    "Poligonal",
    "ArbolY",
    "ContinuoMalla",
    "parsear_complejo",
    "parsear_mapa",
    "parsear_configuracion",
    "parsear_rango",
    "formatear_real",
    "formatear_complejo",
    "a_json",
    "escribir_json",
    "escribir_csv",
    "Steps",
    "evaluar",
    "grado_local",
    "preimagenes",
    "conjunto_julia",
    "clasificar_orbitas_criticas",
    "levantar_camino",
    "levantar_arbol",
    "iterar_levantamientos",
    "proyectar_nivel",
    "validar_arbol",
    "GrafoEsqueleto",
    "esqueletizar",
    "ClaseTopologica",
    "diametro",
    "bola",
    "redondez",
    "clasificar",
    "extraer_arbol",
    "componentes_al_remover",
    "CertificadoAntena",
    "constante_antena",
    "buscar_antena",
    "revalidar_certificado",
    "escanear_antenas",
    "cota_azzam",
    "dimension_por_cajas",
    "MapaIntervalo",
    "chebyshev",
    "chebyshev_negado",
    "estructura_preimagenes_extremos",
    "incidencia_markov",
    "numero_crecimiento",
    "verificar_modelo_pl",
    "verificar_proyeccion_circulo",
    "clasificar_mapa_intervalo",
    "ElementoCubrimiento",
    "JerarquiaCubrimiento",
    "cubrimiento_inicial",
    "construir_jerarquia",
    "verificar_expansion",
    "verificar_grado",
    "verificar_irreducibilidad",
    "metrica_visual",
    "estimar_metrica_visual",
    "verificar_distorsion",
    "verificar_homotecia",
    "estimar_modulo_qs",
    "escribir_continuo",
    "leer_continuo",
    "escribir_png",
]
