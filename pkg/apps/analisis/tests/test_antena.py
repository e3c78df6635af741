import dataclasses

import numpy as np
from django.test import SimpleTestCase

from core.antena import (
	ADVERTENCIA_CAJAS,
	ANTENA_EN_TODAS,
	PARCIAL,
	SIN_ANTENA_EN_NINGUNA,
	buscar_antena,
	constante_antena,
	cota_azzam,
	dimension_por_cajas,
	escanear_antenas,
	muestrear_centros,
	revalidar_certificado,
)
from core.errores import ErrorResolucion
from core.tipos import ArbolY, ContinuoMalla, Poligonal

ANCHO = 0.01


def arbol_desde_puntas(centro, puntas):
	return ArbolY(centro, tuple(Poligonal([centro, p]) for p in puntas))


def cruz():
	# brazos de 20 celdas desde (30, 30)
	m = np.zeros((61, 61), dtype=bool)
	m[30, 10:51] = True
	m[10:51, 30] = True
	return ContinuoMalla(0, ANCHO, m)


def anillo():
	n = 96
	origen = -1.2 - 1.2j
	ancho = 2.4 / n
	filas, cols = np.indices((n, n))
	r = np.abs(origen + ancho * (cols + 1j * filas))
	return ContinuoMalla(origen, ancho, (r >= 0.85) & (r <= 1.0))


class ConstanteAntenaTests(SimpleTestCase):
	def test_y_de_120_grados(self):
		arbol = arbol_desde_puntas(0, np.exp(2j * np.pi * np.arange(3) / 3))
		self.assertAlmostEqual(constante_antena(arbol, np.sqrt(3)), 1 / np.sqrt(3), places=12)

	def test_forma_de_t(self):
		arbol = arbol_desde_puntas(0, [1, 1j, -1j])
		self.assertAlmostEqual(constante_antena(arbol, 2), 0.5, places=12)

	def test_puntas_coincidentes(self):
		arbol = ArbolY(0, (Poligonal([0, 1]), Poligonal([0, 1j]), Poligonal([0, 0.5, 1])))
		self.assertEqual(constante_antena(arbol, 2), 0.0)

	def test_invariante_por_semejanzas(self):
		arbol = ArbolY(0, (Poligonal([0, 1, 1.5 + 0.5j]), Poligonal([0, 1j]), Poligonal([0, -0.7 - 0.2j])))
		a, b = 2 - 3j, 0.25 + 4j
		original = constante_antena(arbol, 3.0)
		movido = constante_antena(arbol.transformar(a, b), 3.0 * abs(a))
		self.assertAlmostEqual(original, movido, delta=1e-12)

	def test_diametro_no_positivo(self):
		with self.assertRaises(ValueError):
			constante_antena(arbol_desde_puntas(0, [1, 1j, -1j]), 0)


class BuscarAntenaTests(SimpleTestCase):
	def test_cruz(self):
		s = cruz()
		cert = buscar_antena(s, s.mascara, 0.2)
		self.assertIsNotNone(cert)
		self.assertAlmostEqual(cert.c, 0.5)
		self.assertAlmostEqual(cert.arbol.centro, 0.3 + 0.3j)
		self.assertAlmostEqual(cert.diametro_region, 40 * ANCHO)

	def test_umbral_no_alcanzado(self):
		s = cruz()
		self.assertIsNone(buscar_antena(s, s.mascara, 0.6))

	def test_anillo_sin_antena(self):
		s = anillo()
		self.assertIsNone(buscar_antena(s, s.mascara, 1e-3))

	def test_bola_con_pocas_celdas(self):
		s = cruz()
		mascara = np.zeros(s.forma, dtype=bool)
		mascara[30, 28:33] = True
		with self.assertRaises(ErrorResolucion):
			buscar_antena(s, mascara, 0.2)


class RevalidacionTests(SimpleTestCase):
	def test_certificado_valido(self):
		s = cruz()
		cert = buscar_antena(s, s.mascara, 0.2)
		resultado = revalidar_certificado(cert, s)
		self.assertTrue(resultado["valido"])
		self.assertAlmostEqual(resultado["c"], cert.c, delta=1e-12)

	def test_certificado_alterado(self):
		s = cruz()
		cert = buscar_antena(s, s.mascara, 0.2)
		movido = dataclasses.replace(cert, arbol=cert.arbol.transformar(1, 5))
		resultado = revalidar_certificado(movido, s)
		self.assertFalse(resultado["contenido"])
		self.assertFalse(resultado["valido"])


class EscaneoTests(SimpleTestCase):
	def test_muestreo_determinista(self):
		s = cruz()
		a = muestrear_centros(s, 6, 11)
		b = muestrear_centros(s, 6, 11)
		np.testing.assert_array_equal(a, b)
		self.assertEqual(len(set(a.tolist())), 6)
		self.assertTrue(np.all(np.isin(a, s.centros())))

	def test_escaneo_reproducible(self):
		s = cruz()
		uno = escanear_antenas(s, n_escalas=2, n_centros=4, c_min=0.01, generador=5)
		otro = escanear_antenas(s, n_escalas=2, n_centros=4, c_min=0.01, generador=5, hilos=2)
		self.assertEqual(len(uno.filas), 8)
		self.assertEqual(uno.filas, otro.filas)
		self.assertIn(uno.veredicto, (ANTENA_EN_TODAS, PARCIAL, SIN_ANTENA_EN_NINGUNA))
		np.testing.assert_allclose(uno.escalas, [8 * ANCHO, 20 * ANCHO])

	def test_escalas_insuficientes(self):
		with self.assertRaises(ValueError):
			escanear_antenas(cruz(), n_escalas=1)

	def test_continuo_demasiado_chico(self):
		m = np.zeros((20, 20), dtype=bool)
		m[10, 5:15] = True
		with self.assertRaises(ErrorResolucion):
			escanear_antenas(ContinuoMalla(0, ANCHO, m))


class CotaTests(SimpleTestCase):
	def test_simbolica(self):
		cota = cota_azzam(0.5)
		self.assertEqual(cota.forma, "hdim > 1 + b·0.25")
		self.assertIsNone(cota.valor)
		self.assertFalse(cota.degenerada)

	def test_numerica_con_b(self):
		self.assertAlmostEqual(cota_azzam(0.5, b=0.1).valor, 1.025)

	def test_degenerada(self):
		self.assertTrue(cota_azzam(1e-4).degenerada)

	def test_c_fuera_de_rango(self):
		for c in (0, 1, -0.5):
			with self.assertRaises(ValueError):
				cota_azzam(c)


class DimensionTests(SimpleTestCase):
	def test_segmento(self):
		m = np.zeros((256, 256), dtype=bool)
		m[128, :] = True
		informe = dimension_por_cajas(ContinuoMalla(0, 1 / 256, m))
		self.assertAlmostEqual(informe.estimacion, 1.0, places=6)
		self.assertTrue(informe.adelgazado)
		self.assertEqual(informe.advertencia, ADVERTENCIA_CAJAS)

	def test_cuadrado_lleno(self):
		informe = dimension_por_cajas(ContinuoMalla(0, 1 / 256, np.ones((256, 256), dtype=bool)))
		self.assertAlmostEqual(informe.estimacion, 2.0, places=6)
		self.assertFalse(informe.adelgazado)
		self.assertAlmostEqual(informe.r2, 1.0)

	def test_pocas_escalas(self):
		with self.assertRaises(ErrorResolucion):
			dimension_por_cajas(ContinuoMalla(0, 1 / 64, np.ones((64, 64), dtype=bool)))
