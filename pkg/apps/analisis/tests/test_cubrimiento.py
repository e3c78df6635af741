import numpy as np
from django.test import SimpleTestCase

from core.cubrimiento import (
	FALLA,
	INSUFICIENTE,
	PASA,
	construir_jerarquia,
	cubrimiento_inicial,
	imagen_en_malla,
	verificar_expansion,
	verificar_grado,
	verificar_irreducibilidad,
)
from core.errores import ErrorProfundidad, ErrorResolucion
from core.metricas import (
	QS_CONSISTENTE,
	distancia_arco,
	distancia_euclidea,
	envolvente_monotona,
	estimar_metrica_visual,
	estimar_modulo_qs,
	triples_aleatorios,
	verificar_cuasi_autosimilitud,
	verificar_distorsion,
	verificar_homotecia,
)
from core.tipos import ContinuoMalla, MapaPolinomial

Z2 = MapaPolinomial((0, 0, 1))
T2 = MapaPolinomial((-1, 0, 2))


def anillo(n=128):
	# |z| en [0.97, 1.03]: z^2 lo manda a menos de dos celdas de sí mismo.
	# La malla se corre una fracción de celda para que no haya centros alineados con 0.
	ancho = 2.4 / n
	origen = complex(-1.2 + 0.37 * ancho, -1.2 + 0.61 * ancho)
	filas, cols = np.indices((n, n))
	r = np.abs(origen + ancho * (cols + 1j * filas))
	return ContinuoMalla(origen, ancho, (r >= 0.97) & (r <= 1.03))


def segmento_real(n=2001):
	# [-1, 1] en la fila del medio, con celdas exactamente en ±1
	ancho = 2.0 / (n - 1)
	m = np.zeros((3, n), dtype=bool)
	m[1, :] = True
	return ContinuoMalla(complex(-1, -ancho), ancho, m)


class ImagenEnMallaTests(SimpleTestCase):
	def test_sin_fallas_de_resolucion(self):
		s = anillo()
		imagen = imagen_en_malla(Z2, s)
		self.assertFalse(imagen.defecto.any())
		self.assertTrue(s.mascara.ravel()[imagen.destino].all())

	def test_bandas_que_cubren_todo_se_descartan(self):
		s = segmento_real()
		u0 = cubrimiento_inicial(s)
		self.assertEqual(len(u0), 2)
		for u in u0:
			self.assertTrue(np.any(s.mascara & ~u))

	def test_cubrimiento_inicial(self):
		s = anillo()
		u0 = cubrimiento_inicial(s)
		self.assertEqual(len(u0), 4)
		self.assertFalse(np.any(s.mascara & ~np.logical_or.reduce(u0)))


class JerarquiaTests(SimpleTestCase):
	@classmethod
	def setUpClass(cls):
		super().setUpClass()
		cls.s = anillo()
		cls.h = construir_jerarquia(Z2, cls.s, profundidad=3, generador=0)

	def test_niveles(self):
		self.assertEqual(self.h.profundidad, 3)
		self.assertEqual(len(self.h.niveles[0]), 4)
		cantidades = [len(n) for n in self.h.niveles]
		self.assertGreaterEqual(cantidades[1], 8)
		self.assertEqual(cantidades, sorted(cantidades))

	def test_expansion(self):
		informe = verificar_expansion(self.h)
		self.assertEqual(informe.veredicto, PASA)
		self.assertLess(informe.mallas[-1], 0.5 * informe.mallas[0])

	def test_grado_acotado(self):
		informe = verificar_grado(self.h)
		self.assertEqual(informe.veredicto, PASA)
		self.assertEqual(informe.maximo, 1)

	def test_exportar(self):
		filas = self.h.exportar()
		self.assertEqual(len(filas), sum(len(n) for n in self.h.niveles))
		self.assertEqual(set(filas[0]), {"nivel", "id", "imagen_id", "grado", "grado_cadena", "caja", "celdas"})

	def test_profundidad_insuficiente(self):
		h = construir_jerarquia(Z2, self.s, profundidad=1, generador=0)
		self.assertEqual(verificar_expansion(h).veredicto, INSUFICIENTE)
		self.assertEqual(verificar_grado(h).veredicto, INSUFICIENTE)
		with self.assertRaises(ErrorProfundidad):
			estimar_metrica_visual(h)

	def test_hilos_no_cambian_la_jerarquia(self):
		uno = construir_jerarquia(Z2, self.s, profundidad=2, generador=3)
		varios = construir_jerarquia(Z2, self.s, profundidad=2, hilos=2, generador=3)
		self.assertEqual(uno.exportar(), varios.exportar())

	def test_u0_que_no_cubre(self):
		izquierda = self.s.malla_completa().real < 0
		with self.assertRaises(ValueError):
			construir_jerarquia(Z2, self.s, u0=[izquierda], profundidad=1)

	def test_imagen_fuera_del_continuo(self):
		with self.assertRaises(ErrorResolucion):
			construir_jerarquia(MapaPolinomial((0.5, 0, 1)), self.s, profundidad=1)


class SegmentoChebyshevTests(SimpleTestCase):
	@classmethod
	def setUpClass(cls):
		super().setUpClass()
		cls.h = construir_jerarquia(T2, segmento_real(), profundidad=6, generador=0)

	def test_expansion(self):
		informe = verificar_expansion(self.h)
		self.assertEqual(informe.veredicto, PASA)
		self.assertLess(informe.mallas[-1], 0.5 * informe.mallas[0])

	def test_grado_en_el_punto_critico(self):
		informe = verificar_grado(self.h)
		self.assertEqual(informe.veredicto, PASA)
		self.assertEqual(informe.maximo, 2)


class MetricaVisualTests(SimpleTestCase):
	@classmethod
	def setUpClass(cls):
		super().setUpClass()
		cls.h = construir_jerarquia(Z2, anillo(), profundidad=5, generador=0)
		cls.vm = estimar_metrica_visual(cls.h, epsilon=np.log(2), generador=0)

	def test_constantes(self):
		self.assertAlmostEqual(self.vm.epsilon, np.log(2))
		self.assertGreaterEqual(self.vm.C, 1.0)
		self.assertLessEqual(self.vm.C, 4.0)
		self.assertGreater(self.vm.r0, 0)
		self.assertGreater(self.vm.r1, 0)
		self.assertGreaterEqual(self.vm.K, 1.0)
		self.assertTrue(np.isfinite(self.vm.K))
		D = self.vm.distancias()
		np.testing.assert_array_equal(D, D.T)
		self.assertTrue(np.all(np.diag(D) == 0))

	def test_distorsion_acotada(self):
		distorsion = verificar_distorsion(self.h, self.vm)
		self.assertIn(distorsion.veredicto, (PASA, FALLA))
		self.assertTrue(distorsion.pares_redondez)
		for arriba, abajo in distorsion.pares_redondez:
			self.assertTrue(1.0 <= arriba < np.inf)
			self.assertTrue(1.0 <= abajo < np.inf)
		for arriba, abajo in distorsion.pares_diametro:
			self.assertTrue(np.isfinite(arriba) and np.isfinite(abajo))
		_, envolvente = distorsion.envolvente_redondez
		self.assertTrue(np.all(np.diff(envolvente) >= -1e-12))

	def test_cuasi_autosimilitud(self):
		resultado = verificar_cuasi_autosimilitud(self.h, self.vm)
		self.assertEqual(resultado["r0"], self.vm.r0)
		for b in resultado["bolas"]:
			self.assertTrue(1 <= b["k"] <= self.h.profundidad)
			self.assertGreaterEqual(b["dispersion"], 1.0)


class IrreducibilidadTests(SimpleTestCase):
	def test_arco_de_un_dieciseisavo(self):
		s = anillo()
		angulos = np.angle(s.malla_completa())
		w = s.mascara & (angulos >= 0) & (angulos <= np.pi / 8)
		self.assertEqual(verificar_irreducibilidad(Z2, s, w), 4)

	def test_w_vacio(self):
		s = anillo()
		with self.assertRaises(ValueError):
			verificar_irreducibilidad(Z2, s, np.zeros(s.forma, dtype=bool))


class HomoteciaTests(SimpleTestCase):
	def test_z2_duplica_la_distancia_angular(self):
		informe = verificar_homotecia(Z2, anillo(), distancia_arco, generador=0)
		self.assertAlmostEqual(informe.kappa, 0.5, places=9)
		self.assertEqual(informe.violaciones, 0)

	def test_violaciones_contra_una_referencia(self):
		informe = verificar_homotecia(Z2, anillo(), distancia_arco, kappa_ref=0.75, generador=0)
		self.assertGreater(informe.violaciones, 0)


class CuasiSimetriaTests(SimpleTestCase):
	def setUp(self):
		rng = np.random.default_rng(4)
		puntos = rng.random(200) + 1j * rng.random(200)
		self.triples = triples_aleatorios(puntos, 2000, rng)

	def test_identidad(self):
		modulo = estimar_modulo_qs(distancia_euclidea, distancia_euclidea, self.triples)
		self.assertEqual(modulo.veredicto, QS_CONSISTENTE)
		self.assertAlmostEqual(modulo.exponente, 1.0)
		self.assertEqual(modulo.omitidos, 0)

	def test_copo_de_nieve(self):
		def raiz(a, b):
			return np.sqrt(distancia_euclidea(a, b))

		modulo = estimar_modulo_qs(distancia_euclidea, raiz, self.triples)
		self.assertEqual(modulo.veredicto, QS_CONSISTENTE)
		self.assertAlmostEqual(modulo.exponente, 0.5)

	def test_envolvente_monotona(self):
		xs, env = envolvente_monotona([3, 1, 2], [1, 2, 0])
		self.assertEqual(xs.tolist(), [1, 2, 3])
		self.assertTrue(np.all(np.diff(env) >= 0))
		self.assertTrue(np.all(env >= [2, 0, 1]))
