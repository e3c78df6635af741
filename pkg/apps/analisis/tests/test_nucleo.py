import json
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from core.almacenamiento import escribir_continuo, leer_continuo
from core.format import a_json, escribir_csv, formatear_complejo, formatear_real
from core.parse import parsear_complejo, parsear_configuracion, parsear_mapa, parsear_rango
from core.steps import Steps
from core.tipos import ArbolY, ContinuoMalla, MapaPolinomial, Poligonal
from core.tolerancias import configurar_tolerancias, restablecer_tolerancias, tol_geom, tolerancias
from core.validate import asegurar_abierto_unitario, asegurar_conexa, asegurar_potencia_de_dos


class ParseTests(SimpleTestCase):
	def test_literales_complejos(self):
		self.assertEqual(parsear_complejo("3-4i"), 3 - 4j)
		self.assertEqual(parsear_complejo("i"), 1j)
		self.assertEqual(parsear_complejo("-i"), -1j)
		self.assertEqual(parsear_complejo("0.5+0.25i"), 0.5 + 0.25j)
		self.assertEqual(parsear_complejo("1/4"), 0.25)
		self.assertEqual(parsear_complejo("1e-3"), 0.001)

	def test_literales_invalidos(self):
		for texto in ("", "1/0", "2*i", "3+", "1+2+3i"):
			with self.assertRaises(ValueError):
				parsear_complejo(texto)

	def test_mapa_z2_mas_i(self):
		mapa = parsear_mapa("poly: i, 0, 1")
		self.assertEqual(mapa.grado, 2)
		self.assertEqual(mapa(0), 1j)
		self.assertEqual(mapa(1j), -1 + 1j)

	def test_mapa_invalido(self):
		for texto in ("rational: 1, 2", "poly: 1, 2", "poly: 1,,1", "z^2"):
			with self.assertRaises(ValueError):
				parsear_mapa(texto)

	def test_configuracion_clave_valor(self):
		datos = parsear_configuracion("# corrida\nresolucion = 256\nMAX-ITER=50  # comentario\n\n")
		self.assertEqual(datos, {"resolucion": "256", "max_iter": "50"})
		with self.assertRaises(ValueError):
			parsear_configuracion("sin igual")

	def test_rangos(self):
		self.assertEqual(parsear_rango("2-5"), [2, 3, 4, 5])
		self.assertEqual(parsear_rango("2,4"), [2, 4])
		self.assertEqual(parsear_rango("7"), [7])
		with self.assertRaises(ValueError):
			parsear_rango("a-b")


class TiposTests(SimpleTestCase):
	def test_mapa_horner_y_derivada(self):
		mapa = MapaPolinomial((1, 0, 0, 1))  # z^3 + 1
		self.assertEqual(mapa(2), 9)
		self.assertEqual(mapa.evaluar_derivada(2), 12)
		np.testing.assert_allclose(mapa(np.array([0, 1])), [1, 2])

	def test_mapa_grado_uno_rechazado(self):
		with self.assertRaises(ValueError):
			MapaPolinomial((0, 1))

	def test_radio_julia_acota(self):
		mapa = MapaPolinomial((1j, 0, 1))
		r = mapa.radio_julia()
		z = 1.01 * r * np.exp(2j * np.pi * np.linspace(0, 1, 64))
		self.assertTrue(np.all(np.abs(mapa(z)) > np.abs(z)))

	def test_poligonal_y_arbol(self):
		p = Poligonal([0, 1, 1 + 1j])
		self.assertEqual(p.largo, 2.0)
		with self.assertRaises(ValueError):
			Poligonal([0, 0, 1])
		arbol = ArbolY(0, (Poligonal([0, 1]), Poligonal([0, 1j]), Poligonal([0, -1])))
		self.assertEqual(arbol.puntas, (1, 1j, -1))
		movido = arbol.transformar(2, 1)
		self.assertEqual(movido.centro, 1)
		self.assertEqual(movido.puntas, (3, 1 + 2j, -1))

	def test_continuo_centros_e_indices(self):
		mascara = np.zeros((4, 5), dtype=bool)
		mascara[2, 3] = True
		s = ContinuoMalla(1 + 1j, 0.5, mascara)
		self.assertEqual(list(s.centros()), [1 + 1j + 0.5 * (3 + 2j)])
		fi, fj = s.indices_de(s.centros())
		self.assertEqual((int(fi[0]), int(fj[0])), (2, 3))


class ValidacionTests(SimpleTestCase):
	def test_potencia_de_dos(self):
		self.assertEqual(asegurar_potencia_de_dos(512), 512)
		for n in (0, 3, 100):
			with self.assertRaises(ValueError):
				asegurar_potencia_de_dos(n)

	def test_abierto_unitario(self):
		self.assertEqual(asegurar_abierto_unitario(0.5), 0.5)
		for c in (0, 1, 1.5):
			with self.assertRaises(ValueError):
				asegurar_abierto_unitario(c)

	def test_conexidad(self):
		m = np.zeros((5, 5), dtype=bool)
		m[1, 1] = m[2, 2] = True  # vecinos en diagonal
		asegurar_conexa(m)
		m[4, 4] = True
		with self.assertRaises(ValueError):
			asegurar_conexa(m)


class ToleranciasTests(SimpleTestCase):
	def tearDown(self):
		restablecer_tolerancias()

	def test_configurar_y_restablecer(self):
		configurar_tolerancias(tol_geom=1e-4)
		self.assertEqual(tol_geom(), 1e-4)
		restablecer_tolerancias()
		self.assertEqual(tolerancias(), {"tol_raiz": 1e-10, "tol_orbita": 1e-9, "tol_geom": 1e-6})

	def test_tolerancia_no_positiva(self):
		with self.assertRaises(ValueError):
			configurar_tolerancias(tol_raiz=0)


class FormatoTests(SimpleTestCase):
	def test_formatear(self):
		self.assertEqual(formatear_real(0.5000), "0.5")
		self.assertEqual(formatear_real(-0.0000001), "0")
		self.assertEqual(formatear_complejo(1j), "i")
		self.assertEqual(formatear_complejo(3 - 4j), "3-4i")

	def test_json_estable(self):
		texto = a_json({"b": 1 + 2j, "a": np.float64(np.inf), "c": np.arange(2)})
		self.assertEqual(json.loads(texto), {"a": None, "b": [1.0, 2.0], "c": [0, 1]})
		self.assertLess(texto.index('"a"'), texto.index('"b"'))
		self.assertEqual(texto, a_json({"c": np.arange(2), "a": np.inf, "b": 1 + 2j}))

	def test_csv_crlf(self):
		with tempfile.TemporaryDirectory() as d:
			ruta = escribir_csv(Path(d) / "t.csv", ["x", "y"], [(0.25, None), (1, "a,b")])
			self.assertEqual(ruta.read_bytes(), b'x,y\r\n0.25,\r\n1,"a,b"\r\n')


class StepsTests(SimpleTestCase):
	def test_historial_sin_marca_de_tiempo(self):
		steps = Steps()
		steps.begin("julia")
		steps.add("escape", {"celdas": 10})
		steps.end({"ok": True})
		pasos = steps.to_list()
		self.assertEqual([p["etapa"] for p in pasos], ["inicio", "paso", "fin"])
		self.assertNotIn("ts", pasos[1])
		self.assertEqual(steps.resumen(), ["[julia] escape"])


class AlmacenamientoTests(SimpleTestCase):
	def test_continuo_binario(self):
		rng = np.random.default_rng(3)
		s = ContinuoMalla(-1 - 1j, 0.125, rng.random((17, 9)) < 0.3, componentes=2)
		with tempfile.TemporaryDirectory() as d:
			ruta = escribir_continuo(Path(d) / "s.cmalla", s)
			leido = leer_continuo(ruta)
		self.assertEqual(leido.origen, s.origen)
		self.assertEqual(leido.ancho, s.ancho)
		self.assertEqual(leido.componentes, 2)
		np.testing.assert_array_equal(leido.mascara, s.mascara)

	def test_marca_invalida(self):
		with tempfile.TemporaryDirectory() as d:
			ruta = Path(d) / "x.cmalla"
			ruta.write_bytes(b"NOPE" * 20)
			with self.assertRaises(ValueError):
				leer_continuo(ruta)
