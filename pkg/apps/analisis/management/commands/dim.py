from core.format import formatear_real

from ...comandos import ComandoAnalisis
from ...services.antena import estimar_dimension


class Command(ComandoAnalisis):
	help = "Estima la dimensión por cajas del conjunto de Julia (cota superior de la de Hausdorff)."
	nombre = "dim"

	def ejecutar(self, config, steps, **opciones):
		res = estimar_dimension(config, steps=steps)
		datos = self.exigir_ok(res)
		informe = datos["informe"]
		self.escribir_json(config, "dimension.json", self.informe(config, res, mapa=datos["mapa"], dimension=informe))
		self.escribir_csv(
			config,
			"dimension.csv",
			["lado", "cajas", "residuo"],
			zip(informe.lados, informe.conteos, informe.residuos),
		)
		self.stdout.write(f"dimensión por cajas: {formatear_real(informe.estimacion, 4)} (r² = {formatear_real(informe.r2, 4)})")
		self.stdout.write(informe.advertencia)
