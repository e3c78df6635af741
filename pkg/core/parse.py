"""parse.py — Conversión segura de texto a mapas, números complejos y configuración.

Propósito
---------
Convertir texto a las estructuras del núcleo usando reglas restringidas y
mensajes de error claros en español, sin ejecutar código arbitrario.

Funciones públicas (resumen)
-----------------------------
- parsear_complejo(texto)
    Literal complejo: "3", "-0.5", "1e-3", "i", "-i", "2i", "3-4i", "0.5+0.25i",
    "1/4" (fracción real). No hay productos ni paréntesis.

- parsear_mapa(texto)
    Especificación "poly: c0, c1, ..., cd" (coeficientes ascendentes) a
    MapaPolinomial. "poly: i, 0, 1" es z^2 + i.

- parsear_configuracion(texto)
    Archivo simple clave=valor (una por línea, '#' comenta) a dict de cadenas.

- parsear_rango(texto)
    "2-8" -> [2, ..., 8]; "3" -> [3]; "2,4,5" -> [2, 4, 5].

Errores
-------
ValueError para: texto vacío; caracteres no permitidos; literal incompleto;
denominador 0; prefijo de mapa desconocido; grado menor que 2.
"""

from __future__ import annotations

from .tipos import MapaPolinomial


# --- Tokenizador (sólo símbolos permitidos) ----------------------------------

class _Token:
    def __init__(self, tipo, valor=None):
        self.tipo = tipo  # 'NUM', 'I', 'MAS', 'MENOS', 'DIV', 'EOF'
        self.valor = valor


def _leer_numero(s, i):
    """Lee dígitos con punto decimal y exponente opcionales desde s[i]."""
    j = i
    punto = False
    while j < len(s) and (s[j].isdigit() or (s[j] == '.' and not punto)):
        if s[j] == '.':
            punto = True
        j += 1
    if j < len(s) and s[j] in 'eE':
        k = j + 1
        if k < len(s) and s[k] in '+-':
            k += 1
        if k < len(s) and s[k].isdigit():
            while k < len(s) and s[k].isdigit():
                k += 1
            j = k
    if s[i:j] == '.':
        raise ValueError("número mal formado: '.'")
    return s[i:j], j


def _tokenizar(texto):
    s = texto
    i = 0
    tokens = []
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or ch == '.':
            valor, i = _leer_numero(s, i)
            tokens.append(_Token('NUM', valor))
            continue
        if ch in 'ij':
            tokens.append(_Token('I'))
            i += 1
            continue
        if ch == '+':
            tokens.append(_Token('MAS'))
            i += 1
            continue
        if ch == '-':
            tokens.append(_Token('MENOS'))
            i += 1
            continue
        if ch == '/':
            tokens.append(_Token('DIV'))
            i += 1
            continue
        raise ValueError(f"carácter no permitido: '{ch}'")
    tokens.append(_Token('EOF'))
    return tokens


# --- Parser recursivo (gramática restringida) --------------------------------

class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def _ver(self):
        return self.tokens[self.pos]

    def _comer(self, tipo):
        t = self._ver()
        if t.tipo != tipo:
            raise ValueError("literal complejo inválido")
        self.pos += 1
        return t

    # literal := signo? termino ( ('+'|'-') termino )?
    def literal(self):
        signo = self.signo()
        valor = signo * self.termino()
        if self._ver().tipo in ('MAS', 'MENOS'):
            s2 = 1 if self._comer(self._ver().tipo).tipo == 'MAS' else -1
            segundo = self.termino()
            if (valor.imag != 0) == (segundo.imag != 0) and valor != 0 and segundo != 0:
                raise ValueError("se esperaba una parte real y una imaginaria")
            valor = valor + s2 * segundo
        return valor

    def signo(self):
        if self._ver().tipo == 'MENOS':
            self._comer('MENOS')
            return -1
        if self._ver().tipo == 'MAS':
            self._comer('MAS')
        return 1

    # termino := real 'i'? | 'i'
    def termino(self):
        t = self._ver()
        if t.tipo == 'I':
            self._comer('I')
            return 1j
        x = self.real()
        if self._ver().tipo == 'I':
            self._comer('I')
            return complex(0.0, x)
        return complex(x, 0.0)

    # real := NUM ( '/' NUM )?
    def real(self):
        num = float(self._comer('NUM').valor)
        if self._ver().tipo == 'DIV':
            self._comer('DIV')
            den = float(self._comer('NUM').valor)
            if den == 0:
                raise ValueError("denominador 0 en fracción")
            return num / den
        return num


# --- Funciones públicas -------------------------------------------------------

def parsear_complejo(texto):
    """Convierte un literal "a+bi" (o sus formas cortas) a complex."""
    if not texto or not texto.strip():
        raise ValueError("texto vacío")
    parser = _Parser(_tokenizar(texto.strip()))
    valor = parser.literal()
    if parser._ver().tipo != 'EOF':
        raise ValueError(f"expresión extra al final de '{texto.strip()}'")
    return complex(valor)


def parsear_mapa(texto):
    """Convierte "poly: c0, c1, ..., cd" en MapaPolinomial.

    Los coeficientes van en grado ascendente; se descartan ceros finales
    sólo si lo que queda sigue teniendo grado >= 2.
    """
    if not texto or not texto.strip():
        raise ValueError("especificación de mapa vacía")
    t = texto.strip()
    if ':' not in t:
        raise ValueError("la especificación debe tener la forma 'poly: c0, c1, ...'")
    prefijo, cuerpo = t.split(':', 1)
    if prefijo.strip().lower() != 'poly':
        raise ValueError(f"tipo de mapa desconocido: '{prefijo.strip()}' (sólo 'poly')")
    partes = [p.strip() for p in cuerpo.split(',')]
    if any(p == '' for p in partes):
        raise ValueError("coeficiente vacío en la especificación")
    coeficientes = [parsear_complejo(p) for p in partes]
    while len(coeficientes) > 3 and coeficientes[-1] == 0:
        coeficientes.pop()
    return MapaPolinomial(tuple(coeficientes))


def parsear_configuracion(texto):
    """Archivo clave=valor a dict. Las claves se normalizan a minúsculas."""
    datos = {}
    for numero, linea in enumerate(texto.splitlines(), start=1):
        limpia = linea.split('#', 1)[0].strip()
        if not limpia:
            continue
        if '=' not in limpia:
            raise ValueError(f"línea {numero}: se esperaba 'clave = valor'")
        clave, valor = limpia.split('=', 1)
        clave = clave.strip().lower().replace('-', '_')
        if not clave:
            raise ValueError(f"línea {numero}: clave vacía")
        datos[clave] = valor.strip()
    return datos


def parsear_rango(texto):
    """"2-8" -> [2..8], "2,4" -> [2, 4], "5" -> [5]."""
    if not texto or not str(texto).strip():
        raise ValueError("rango vacío")
    t = str(texto).strip()
    try:
        if ',' in t:
            valores = [int(p) for p in t.split(',') if p.strip()]
        elif '-' in t[1:]:
            a, b = t.split('-', 1) if not t.startswith('-') else (t, '')
            valores = list(range(int(a), int(b) + 1))
        else:
            valores = [int(t)]
    except ValueError as e:
        raise ValueError(f"rango inválido: '{t}'") from e
    if not valores:
        raise ValueError(f"rango inválido: '{t}'")
    return valores


__all__ = [
    'parsear_complejo',
    'parsear_mapa',
    'parsear_configuracion',
    'parsear_rango',
]
