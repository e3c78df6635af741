from ...comandos import ComandoAnalisis
from ...services.cubrimiento import analizar_cubrimiento


def _veredicto(valor):
	return valor if isinstance(valor, str) else valor.veredicto


class Command(ComandoAnalisis):
	help = "Construye la jerarquía de cubrimientos, verifica los axiomas y estima la métrica visual."
	nombre = "cover"

	def agregar_argumentos(self, parser):
		parser.add_argument("--depth", type=int, dest="profundidad")

	def ejecutar(self, config, steps, **opciones):
		res = analizar_cubrimiento(config, steps=steps)
		datos = self.exigir_ok(res)
		jerarquia = datos.pop("jerarquia")
		datos.pop("continuo")
		self.escribir_json(config, "cubrimiento.json", self.informe(config, res, cubrimiento=datos))
		columnas = ["nivel", "id", "imagen_id", "grado", "grado_cadena", "celdas"]
		self.escribir_csv(config, "jerarquia.csv", columnas, [[e[c] for c in columnas] for e in jerarquia])
		self.stdout.write(f"elementos por nivel: {datos['elementos_por_nivel']}")
		self.stdout.write(f"expansión: {datos['expansion'].veredicto}")
		self.stdout.write(f"grado: {datos['grado'].veredicto} (máximo {datos['grado'].maximo})")
		self.stdout.write(f"irreducibilidad: {datos['irreducibilidad']['veredicto']}")
		self.stdout.write(f"distorsión: {_veredicto(datos['distorsion'])}")
		self.stdout.write(f"cuasi-simetría: {_veredicto(datos['cuasi_simetria'])}")
