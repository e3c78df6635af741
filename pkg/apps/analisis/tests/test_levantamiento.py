import numpy as np
from django.test import SimpleTestCase

from core.antena import propagar_antena
from core.errores import ErrorLevantamiento, ErrorRamaAmbigua
from core.levantamiento import (
	iterar_levantamientos,
	levantar_arbol,
	levantar_camino,
	problemas_arbol,
	proyectar_nivel,
	validar_arbol,
)
from core.tipos import ArbolY, MapaPolinomial, Poligonal

Z2 = MapaPolinomial((0, 0, 1))


def arbol_en_uno():
	return ArbolY(1, (Poligonal([1, 1.5]), Poligonal([1, 1 + 0.5j]), Poligonal([1, 1 - 0.5j])))


class LevantarCaminoTests(SimpleTestCase):
	def test_semicirculo(self):
		t = np.linspace(0, 1, 65)
		gamma = Poligonal(np.exp(1j * np.pi * t))
		levantado = levantar_camino(Z2, gamma, 1, generador=0)
		np.testing.assert_allclose(levantado.vertices, np.exp(1j * np.pi * t / 2), atol=1e-8)

	def test_rama_negativa_de_la_raiz(self):
		levantado = levantar_camino(Z2, Poligonal([1, 4]), -1, generador=0)
		np.testing.assert_allclose(levantado.vertices, [-1, -2], atol=1e-10)

	def test_x0_no_es_preimagen(self):
		with self.assertRaises(ValueError):
			levantar_camino(Z2, Poligonal([1, 2]), 0.5)

	def test_rama_ambigua_en_valor_critico(self):
		# el segmento [-1, 1] pasa por 0, valor crítico de z^2
		with self.assertRaises(ErrorRamaAmbigua) as ctx:
			levantar_camino(Z2, Poligonal([-1, 1]), 1j, generador=0)
		self.assertAlmostEqual(ctx.exception.parametro, 0.5, delta=0.01)


class ArbolesTests(SimpleTestCase):
	def test_levantar_arbol(self):
		base = arbol_en_uno()
		levantado = levantar_arbol(Z2, base, -1, generador=0)
		self.assertEqual(levantado.centro, -1)
		self.assertLess(proyectar_nivel(Z2, levantado, base, 1), 1e-8)

	def test_nivel_tres_de_z2(self):
		base = arbol_en_uno()
		nivel = iterar_levantamientos(Z2, base, 3, generador=0)
		self.assertEqual(len(nivel), 8)
		for arbol in nivel:
			self.assertLess(proyectar_nivel(Z2, arbol, base, 3), 1e-8)
		centros = np.array([a.centro for a in nivel])
		np.testing.assert_allclose(np.abs(centros), 1, atol=1e-9)

	def test_nivel_cero_es_la_identidad(self):
		base = arbol_en_uno()
		nivel = iterar_levantamientos(Z2, base, 0)
		self.assertEqual(len(nivel), 1)
		self.assertIs(nivel[0], base)

	def test_presupuesto(self):
		nivel = iterar_levantamientos(Z2, arbol_en_uno(), 3, presupuesto=3, generador=0)
		self.assertEqual(len(nivel), 3)

	def test_nivel_negativo(self):
		with self.assertRaises(ValueError):
			iterar_levantamientos(Z2, arbol_en_uno(), -1)


class ValidacionArbolTests(SimpleTestCase):
	def test_arbol_valido(self):
		self.assertEqual(problemas_arbol(arbol_en_uno()), [])

	def test_piernas_que_se_cortan(self):
		arbol = ArbolY(0, (Poligonal([0, 1]), Poligonal([0, -1]), Poligonal([0, 0.5 + 0.5j, 0.5 - 0.5j])))
		problemas = problemas_arbol(arbol)
		self.assertIn("las piernas 0 y 2 se cortan fuera del centro", problemas)
		with self.assertRaises(ErrorLevantamiento):
			validar_arbol(arbol)

	def test_piernas_superpuestas(self):
		arbol = ArbolY(0, (Poligonal([0, 1]), Poligonal([0, 1j]), Poligonal([0, 1])))
		problemas = problemas_arbol(arbol)
		self.assertIn("puntas 0 y 2 coinciden", problemas)
		self.assertIn("las piernas 0 y 2 se superponen en el centro", problemas)


class PropagacionTests(SimpleTestCase):
	def test_kappa_positivo(self):
		informe = propagar_antena(Z2, arbol_en_uno(), niveles=2, generador=0)
		self.assertAlmostEqual(informe.c_base, 0.5)
		self.assertEqual(informe.arboles_por_nivel, [2, 4])
		self.assertGreater(informe.kappa, 0)
