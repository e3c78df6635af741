from core.format import formatear_real

from ...comandos import ComandoAnalisis
from ...services.chebyshev import tabla_chebyshev

COLUMNAS = [
	"d",
	"patron",
	"patron_negado",
	"crecimiento",
	"irreducible",
	"error_coseno",
	"error_pl",
	"error_proyeccion",
	"vueltas_f2",
]


class Command(ComandoAnalisis):
	help = "Verificaciones de Chebyshev por grado: entrelazado, Markov, crecimiento e identidades."
	nombre = "cheb"

	def agregar_argumentos(self, parser):
		parser.add_argument("--degrees", dest="grados", help='rango de grados, p. ej. "2-8" o "2,3,5"')

	def ejecutar(self, config, steps, **opciones):
		res = tabla_chebyshev(config.grados, semilla=config.semilla, steps=steps)
		datos = self.exigir_ok(res)
		self.escribir_json(config, "chebyshev.json", self.informe(config, res, chebyshev=datos))
		self.escribir_csv(config, "chebyshev.csv", COLUMNAS, [[f[c] for c in COLUMNAS] for f in datos["filas"]])
		for f in datos["filas"]:
			self.stdout.write(f"d={f['d']}: {f['patron']}, crecimiento {formatear_real(f['crecimiento'], 9)}")
		if datos["no_expansivos"]:
			self.stdout.write(f"no expansivos: {', '.join(str(d) for d in datos['no_expansivos'])}")
