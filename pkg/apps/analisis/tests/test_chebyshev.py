import numpy as np
import sympy
from django.test import SimpleTestCase

from core.chebyshev import (
	EXTREMOS_FIJOS,
	EXTREMOS_IDENTIFICADOS,
	EXTREMOS_INTERCAMBIADOS,
	chebyshev,
	chebyshev_negado,
	clasificar_mapa_intervalo,
	contar_vueltas,
	es_irreducible,
	estructura_preimagenes_extremos,
	incidencia_markov,
	mapa_intervalo,
	numero_crecimiento,
	verificar_conjugacion_negacion,
	verificar_identidad_coseno,
	verificar_modelo_pl,
	verificar_proyeccion_circulo,
	verificar_semigrupo,
)
from core.errores import ErrorPatron


class CoeficientesTests(SimpleTestCase):
	def test_coinciden_con_sympy(self):
		x = sympy.Symbol("x")
		for d in range(1, 13):
			esperado = [int(c) for c in reversed(sympy.Poly(sympy.chebyshevt(d, x), x).all_coeffs())]
			self.assertEqual(list(chebyshev(d).coeficientes), esperado, f"d={d}")
			self.assertEqual(list(chebyshev_negado(d).coeficientes), [-c for c in esperado])

	def test_grado_cero_rechazado(self):
		with self.assertRaises(ValueError):
			chebyshev(0)

	def test_clenshaw_en_grado_alto(self):
		self.assertLess(verificar_identidad_coseno(24, generador=1), 1e-11)


class EstructuraTests(SimpleTestCase):
	def test_patrones(self):
		self.assertEqual(estructura_preimagenes_extremos(chebyshev(3)).patron, EXTREMOS_FIJOS)
		self.assertEqual(estructura_preimagenes_extremos(chebyshev_negado(3)).patron, EXTREMOS_INTERCAMBIADOS)
		self.assertEqual(estructura_preimagenes_extremos(chebyshev(4)).patron, EXTREMOS_IDENTIFICADOS)
		self.assertEqual(estructura_preimagenes_extremos(chebyshev_negado(4)).patron, EXTREMOS_IDENTIFICADOS)

	def test_puntos_y_grados(self):
		for d in range(2, 9):
			e = estructura_preimagenes_extremos(chebyshev(d))
			xs = [p["x"] for p in e.puntos]
			np.testing.assert_allclose(xs, np.sort(np.cos(np.pi * np.arange(d + 1) / d)), atol=1e-9)
			grados = [p["grado"] for p in e.puntos]
			self.assertEqual(grados, [1] + [2] * (d - 1) + [1])
			self.assertEqual(e.balance, {"-1": d, "1": d})

	def test_etiquetas_t5(self):
		e = estructura_preimagenes_extremos(chebyshev(5))
		self.assertEqual([p["etiqueta"] for p in e.puntos], ["-1", "y1", "x1", "y2", "x2", "1"])
		self.assertEqual(e.n, 2)

	def test_sin_patron(self):
		# x^3: sólo ±1 son preimágenes de los extremos
		with self.assertRaises(ErrorPatron):
			estructura_preimagenes_extremos(mapa_intervalo([0, 0, 0, 1]))

	def test_imagen_fuera_del_intervalo(self):
		with self.assertRaises(ValueError):
			mapa_intervalo([0, 2])


class CrecimientoTests(SimpleTestCase):
	def test_crecimiento_es_el_grado(self):
		for d in range(2, 9):
			for f in (chebyshev(d), chebyshev_negado(d)):
				M = incidencia_markov(f)
				self.assertTrue(np.all(M.matriz == 1))
				self.assertAlmostEqual(numero_crecimiento(M), d, delta=1e-9)
				self.assertTrue(es_irreducible(M))

	def test_perron_de_una_matriz_conocida(self):
		# raíz de Perron de [[1, 1], [1, 0]] es la razón áurea
		self.assertAlmostEqual(numero_crecimiento(np.array([[1, 1], [1, 0]])), (1 + np.sqrt(5)) / 2, places=8)
		self.assertFalse(es_irreducible(np.array([[1, 1], [0, 1]])))

	def test_grado_uno_no_expansivo(self):
		clase = clasificar_mapa_intervalo(chebyshev(1))
		self.assertFalse(clase.expansivo)
		self.assertAlmostEqual(clase.crecimiento, 1.0)

	def test_modelo_de_un_mapa_arbitrario(self):
		clase = clasificar_mapa_intervalo(mapa_intervalo([1, 0, -2]))  # 1 - 2x^2 = -T_2
		self.assertEqual(clase.modelo, "T'_2")
		self.assertEqual(clase.patron, EXTREMOS_IDENTIFICADOS)
		self.assertTrue(clase.expansivo)


class IdentidadesTests(SimpleTestCase):
	def test_modelo_lineal_a_trozos(self):
		for d in range(2, 7):
			self.assertLess(verificar_modelo_pl(d), 1e-12, f"d={d}")

	def test_identidad_coseno(self):
		for d in range(1, 9):
			self.assertLess(verificar_identidad_coseno(d, generador=d), 1e-11, f"d={d}")

	def test_proyeccion_del_circulo(self):
		for d in (3, 5, 7):
			self.assertLess(verificar_proyeccion_circulo(d, generador=0), 1e-11)
		with self.assertRaises(ValueError):
			verificar_proyeccion_circulo(4)

	def test_conjugacion_por_negacion(self):
		self.assertLess(verificar_conjugacion_negacion(4), 1e-12)
		self.assertGreater(verificar_conjugacion_negacion(3), 1)

	def test_semigrupo(self):
		self.assertLess(verificar_semigrupo(2, 3, generador=0), 1e-11)

	def test_vueltas_del_cuadrado(self):
		for d in (2, 3, 4):
			self.assertEqual(contar_vueltas(chebyshev(d), 2), d * d)
