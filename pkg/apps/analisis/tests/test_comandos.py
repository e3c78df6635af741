import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.analisis.configuracion import cargar_configuracion
from core.cubrimiento import INSUFICIENTE

Z2 = "poly: 0, 0, 1"


class ComandosTests(SimpleTestCase):
	def setUp(self):
		self._tmp = tempfile.TemporaryDirectory()
		self.salida = Path(self._tmp.name)

	def tearDown(self):
		self._tmp.cleanup()

	def correr(self, comando, *args):
		out = StringIO()
		call_command(comando, "--map", Z2, "--out", str(self.salida), *args, stdout=out)
		return out.getvalue()

	def leer_json(self, nombre):
		return json.loads((self.salida / nombre).read_text(encoding="utf-8"))

	def test_julia(self):
		texto = self.correr("julia", "--resolution", "128")
		self.assertIn("conexo: sí", texto)
		for nombre in ("julia.cmalla", "julia.png", "julia.json"):
			self.assertTrue((self.salida / nombre).is_file(), nombre)
		informe = self.leer_json("julia.json")
		self.assertEqual(informe["version"], "0.3.0")
		self.assertEqual(informe["comando"], "julia")
		self.assertEqual(informe["configuracion"]["resolucion"], 128)
		self.assertTrue(informe["julia"]["conexo"])

	def test_julia_es_determinista(self):
		self.correr("julia", "--resolution", "128")
		primero = (self.salida / "julia.json").read_bytes()
		self.correr("julia", "--resolution", "128")
		self.assertEqual(primero, (self.salida / "julia.json").read_bytes())

	def test_classify_circulo(self):
		self.correr("classify", "--resolution", "256")
		clasificacion = self.leer_json("clasificacion.json")["clasificacion"]
		self.assertEqual(clasificacion["tipo"], "circulo")
		self.assertIn("hiperbolico", clasificacion["clases_dinamicas"])
		self.assertFalse((self.salida / "testigo_y.json").exists())

	def test_classify_escribe_el_testigo_y(self):
		call_command(
			"classify", "--map", "poly: i, 0, 1", "--resolution", "1024", "--max-iter", "400",
			"--out", str(self.salida), stdout=StringIO(),
		)
		clasificacion = self.leer_json("clasificacion.json")["clasificacion"]
		self.assertEqual(clasificacion["tipo"], "contiene_y")
		testigo = self.leer_json("testigo_y.json")["testigo"]
		self.assertEqual(len(testigo["piernas"]), 3)

	def test_dim(self):
		self.correr("dim", "--resolution", "256")
		dimension = self.leer_json("dimension.json")["dimension"]
		self.assertGreater(dimension["estimacion"], 0.8)
		self.assertLess(dimension["estimacion"], 1.2)
		lineas = (self.salida / "dimension.csv").read_text(encoding="utf-8").splitlines()
		self.assertEqual(lineas[0], "lado,cajas,residuo")

	def test_antenna(self):
		self.correr("antenna", "--resolution", "256", "--scales", "2", "--centers", "2")
		for nombre in ("antena.json", "antena.csv", "antena.png"):
			self.assertTrue((self.salida / nombre).is_file(), nombre)
		lineas = (self.salida / "antena.csv").read_text(encoding="utf-8").splitlines()
		self.assertEqual(lineas[0], "escala,centro_re,centro_im,c,estado")
		self.assertEqual(len(lineas), 5)

	def test_cheb(self):
		texto = self.correr("cheb", "--degrees", "1-3")
		self.assertIn("no expansivos: 1", texto)
		lineas = (self.salida / "chebyshev.csv").read_text(encoding="utf-8").splitlines()
		self.assertEqual(lineas[0], "d,patron,patron_negado,crecimiento,irreducible,error_coseno,error_pl,error_proyeccion,vueltas_f2")
		self.assertEqual(len(lineas), 4)
		filas = self.leer_json("chebyshev.json")["chebyshev"]["filas"]
		self.assertEqual([f["vueltas_f2"] for f in filas], [1, 4, 9])

	def test_cheb_es_determinista(self):
		self.correr("cheb", "--degrees", "2-4", "--seed", "3")
		primero = (self.salida / "chebyshev.json").read_bytes()
		self.correr("cheb", "--degrees", "2-4", "--seed", "3")
		self.assertEqual(primero, (self.salida / "chebyshev.json").read_bytes())

	def test_cover_poco_profundo(self):
		self.correr("cover", "--resolution", "256", "--depth", "2")
		cubrimiento = self.leer_json("cubrimiento.json")["cubrimiento"]
		self.assertEqual(cubrimiento["metrica_visual"], INSUFICIENTE)
		self.assertEqual(len(cubrimiento["elementos_por_nivel"]), 3)
		self.assertTrue((self.salida / "jerarquia.csv").is_file())

	def test_pasos_en_el_informe(self):
		self.correr("cheb", "--degrees", "2", "--pasos")
		pasos = self.leer_json("chebyshev.json")["pasos"]
		self.assertEqual(pasos[0]["etapa"], "inicio")
		self.assertEqual(pasos[-1]["etapa"], "fin")


class ErroresDeConfiguracionTests(SimpleTestCase):
	def assertCodigo(self, codigo, *args):
		with tempfile.TemporaryDirectory() as d:
			with self.assertRaises(CommandError) as ctx:
				call_command("julia", "--out", d, *args, stdout=StringIO())
		self.assertEqual(ctx.exception.returncode, codigo)

	def test_mapa_malformado(self):
		self.assertCodigo(2, "--map", "rational: 1, 2")

	def test_resolucion_cero(self):
		self.assertCodigo(2, "--map", Z2, "--resolution", "0")

	def test_archivo_inexistente(self):
		self.assertCodigo(2, "--config", "/no/existe.conf")

	def test_clave_desconocida(self):
		with tempfile.TemporaryDirectory() as d:
			ruta = Path(d) / "corrida.conf"
			ruta.write_text("resolucion = 128\ncolor = rojo\n", encoding="utf-8")
			self.assertCodigo(2, "--config", str(ruta))


class CargarConfiguracionTests(SimpleTestCase):
	def test_precedencia(self):
		with tempfile.TemporaryDirectory() as d:
			ruta = Path(d) / "corrida.conf"
			ruta.write_text("resolucion = 128\nsemilla = 7\n", encoding="utf-8")
			config = cargar_configuracion(str(ruta), semilla=9, mapa=None)
		self.assertEqual(config.resolucion, 128)
		self.assertEqual(config.semilla, 9)
		self.assertEqual(config.mapa, "poly: i, 0, 1")

	def test_c_min_fuera_de_rango(self):
		with self.assertRaises(ValueError):
			cargar_configuracion(c_min=1.5)

	def test_valor_no_numerico(self):
		with tempfile.TemporaryDirectory() as d:
			ruta = Path(d) / "corrida.conf"
			ruta.write_text("max_iter = muchas\n", encoding="utf-8")
			with self.assertRaises(ValueError):
				cargar_configuracion(str(ruta))
