from django.core.management.base import CommandError

from core.almacenamiento import escribir_continuo, escribir_png
from core.format import formatear_real

from ...comandos import ComandoAnalisis
from ...services.julia import generar_julia


class Command(ComandoAnalisis):
	help = "Discretiza el conjunto de Julia del mapa y escribe el continuo binario, un PNG y un informe JSON."
	nombre = "julia"

	def ejecutar(self, config, steps, **opciones):
		res = generar_julia(config, steps=steps)
		datos = self.exigir_ok(res)
		s = datos["continuo"]
		escribir_continuo(config.directorio / "julia.cmalla", s)
		escribir_png(config.directorio / "julia.png", s)
		resumen = {
			"mapa": datos["mapa"],
			"celdas": datos["celdas"],
			"ancho": datos["ancho"],
			"origen": s.origen,
			"forma": list(s.forma),
			"diametro": datos["diametro"],
			"componentes": datos["componentes"],
			"conexo": datos["conexo"],
			"metadatos": s.metadatos,
		}
		self.escribir_json(config, "julia.json", self.informe(config, res, julia=resumen))
		self.stdout.write(f"celdas: {datos['celdas']}")
		self.stdout.write(f"diámetro: {formatear_real(datos['diametro'])}")
		self.stdout.write(f"conexo: {'sí' if datos['conexo'] else 'no'} ({datos['componentes']} componentes)")
		if not datos["conexo"]:
			raise CommandError(
				f"el continuo discretizado no es conexo: {datos['componentes']} componentes significativas",
				returncode=1,
			)
