import numpy as np
from django.test import SimpleTestCase

from core.antena import dimension_por_cajas
from core.chebyshev import chebyshev
from core.dinamica import conjunto_julia
from core.errores import ErrorResolucion
from core.esqueleto import esqueletizar
from core.geometria import (
	ARCO,
	CIRCULO,
	CONTIENE_Y,
	bola,
	clasificar,
	componentes_al_remover,
	diametro,
	extraer_arbol,
	recortar,
	redondez,
)
from core.levantamiento import problemas_arbol
from core.tipos import ContinuoMalla, MapaPolinomial

ANCHO = 0.01


def segmento():
	m = np.zeros((100, 100), dtype=bool)
	m[50, 10:91] = True
	return ContinuoMalla(0, ANCHO, m)


def letra_t():
	# brazos de 40 celdas hacia la derecha, arriba y abajo desde (50, 50)
	m = np.zeros((100, 100), dtype=bool)
	m[50, 50:91] = True
	m[10:91, 50] = True
	return ContinuoMalla(0, ANCHO, m)


def cruz():
	# brazos de 20 celdas desde (30, 30)
	m = np.zeros((61, 61), dtype=bool)
	m[30, 10:51] = True
	m[10:51, 30] = True
	return ContinuoMalla(0, ANCHO, m)


def disco_grande():
	# disco de radio 1.4 centrado en 0
	n = 281
	origen = -1.4 - 1.4j
	filas, cols = np.indices((n, n))
	r = np.abs(origen + ANCHO * (cols + 1j * filas))
	return ContinuoMalla(origen, ANCHO, r <= 1.4)


def anillo():
	n = 96
	origen = -1.2 - 1.2j
	ancho = 2.4 / n
	filas, cols = np.indices((n, n))
	r = np.abs(origen + ancho * (cols + 1j * filas))
	return ContinuoMalla(origen, ancho, (r >= 0.85) & (r <= 1.0))


class MedidasTests(SimpleTestCase):
	def test_diametro_del_segmento(self):
		self.assertAlmostEqual(diametro(segmento()), 80 * ANCHO)

	def test_bola(self):
		s = segmento()
		b = bola(s, 0.5 + 0.5j, 10.5 * ANCHO)
		self.assertEqual(int(b.sum()), 21)
		with self.assertRaises(ValueError):
			bola(s, 0.5 + 0.2j, 5 * ANCHO)

	def test_redondez(self):
		s = segmento()
		b = bola(s, 0.5 + 0.5j, 10.5 * ANCHO)
		self.assertAlmostEqual(redondez(s, b, 0.5 + 0.5j), 1.0)
		self.assertAlmostEqual(redondez(s, s.mascara, 0.5 + 0.5j), 1.0)
		# desde 0.45: exterior 0.15 hasta la columna 60, interior 0.06 hasta la 39
		self.assertAlmostEqual(redondez(s, b, 0.45 + 0.5j), 2.5)

	def test_redondez_del_disco_unidad(self):
		s = disco_grande()
		disco = np.abs(s.malla_completa()) <= 1.0
		# exterior 3/2, interior 1/2
		self.assertAlmostEqual(redondez(s, disco, 0.5), 3.0, delta=0.1)

	def test_redondez_sin_resolucion(self):
		s = segmento()
		b = bola(s, 0.5 + 0.5j, 10.5 * ANCHO)
		with self.assertRaises(ErrorResolucion):
			redondez(s, b & (np.indices(s.forma)[1] > 50), 0.5 + 0.5j)

	def test_componentes_al_remover(self):
		self.assertEqual(componentes_al_remover(segmento(), 0.5 + 0.5j), 2)
		self.assertEqual(componentes_al_remover(letra_t(), 0.5 + 0.5j), 3)
		self.assertEqual(componentes_al_remover(anillo(), 0.925), 1)

	def test_recortar(self):
		camino = np.array([0, 1, 1 + 1j])
		np.testing.assert_allclose(recortar(camino, 1.5), [0, 1, 1 + 0.5j])
		np.testing.assert_allclose(recortar(camino, 1.0), [0, 1])
		np.testing.assert_allclose(recortar(camino, 5), camino)


class EsqueletoTests(SimpleTestCase):
	def test_letra_t(self):
		resumen = esqueletizar(letra_t()).resumen()
		self.assertEqual(resumen["ramificaciones"], 1)
		self.assertEqual(resumen["hojas"], 3)
		self.assertEqual(resumen["rango_ciclico"], 0)

	def test_cruz(self):
		esq = esqueletizar(cruz())
		self.assertEqual(sorted(esq.grados.values()), [1, 1, 1, 1, 4])
		self.assertEqual(len(esq.aristas()), 4)
		(v,) = esq.ramificaciones
		self.assertAlmostEqual(esq.grafo.nodes[v]["punto"], 0.3 + 0.3j)

	def test_arbol_de_la_cruz(self):
		s = cruz()
		arbol = extraer_arbol(s)
		self.assertAlmostEqual(arbol.centro, 0.3 + 0.3j)
		np.testing.assert_allclose([p.largo for p in arbol.piernas], [20 * ANCHO] * 3)
		self.assertEqual(problemas_arbol(arbol, s.ancho * 1e-3), [])

	def test_anillo_es_un_lazo(self):
		esq = esqueletizar(anillo())
		self.assertEqual(esq.rango_ciclico, 1)
		self.assertEqual(esq.ramificaciones, [])


class ClasificacionTests(SimpleTestCase):
	def test_segmento_es_arco(self):
		clase = clasificar(segmento())
		self.assertEqual(clase.tipo, ARCO)
		extremos = sorted([clase.testigo[0], clase.testigo[-1]], key=lambda z: z.real)
		np.testing.assert_allclose(extremos, [0.1 + 0.5j, 0.9 + 0.5j])

	def test_anillo_es_circulo(self):
		self.assertEqual(clasificar(anillo()).tipo, CIRCULO)

	def test_letra_t_contiene_y(self):
		clase = clasificar(letra_t())
		self.assertEqual(clase.tipo, CONTIENE_Y)
		self.assertAlmostEqual(clase.testigo.centro, 0.5 + 0.5j)
		self.assertEqual(clase.componentes_corte, 3)
		largos = [p.largo for p in clase.testigo.piernas]
		np.testing.assert_allclose(largos, [40 * ANCHO] * 3)

	def test_julia_de_z2_es_circulo(self):
		s = conjunto_julia(MapaPolinomial((0, 0, 1)), 256, 100)
		self.assertEqual(clasificar(s).tipo, CIRCULO)

	def test_potencias_son_circulos(self):
		for d in (3, 4):
			s = conjunto_julia(MapaPolinomial((0,) * d + (1,)), 256, 100)
			self.assertEqual(clasificar(s).tipo, CIRCULO, f"d={d}")

	def test_chebyshev_son_arcos(self):
		for d in range(2, 6):
			s = conjunto_julia(MapaPolinomial(chebyshev(d).coeficientes), 512, 200)
			self.assertEqual(clasificar(s).tipo, ARCO, f"d={d}")


class DendritaTests(SimpleTestCase):
	@classmethod
	def setUpClass(cls):
		super().setUpClass()
		cls.s = conjunto_julia(MapaPolinomial((1j, 0, 1)), 1024, 400)

	def test_contiene_y(self):
		clase = clasificar(self.s)
		self.assertEqual(clase.tipo, CONTIENE_Y)
		self.assertEqual(problemas_arbol(clase.testigo, self.s.ancho * 1e-3), [])
		self.assertGreaterEqual(clase.esqueleto["ramificaciones"], 1)

	def test_dimension_mayor_que_uno(self):
		self.assertGreater(dimension_por_cajas(self.s).estimacion, 1.02)

	def test_tricotomia_exhaustiva(self):
		continuos = [segmento(), letra_t(), cruz(), anillo(), self.s, conjunto_julia(MapaPolinomial((0, 0, 1)), 256, 100)]
		for s in continuos:
			self.assertIn(clasificar(s).tipo, (CIRCULO, ARCO, CONTIENE_Y))
