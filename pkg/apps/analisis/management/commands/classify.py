from core.geometria import CONTIENE_Y

from ...comandos import ComandoAnalisis
from ...services.julia import clasificar_continuo


class Command(ComandoAnalisis):
	help = "Clasifica el conjunto de Julia como círculo, arco o continuo que contiene un Y (con testigo)."
	nombre = "classify"

	def ejecutar(self, config, steps, **opciones):
		res = clasificar_continuo(config, steps=steps)
		datos = self.exigir_ok(res)
		clase = datos["clase"]
		orbitas = datos["orbitas"]
		resumen = {
			"mapa": datos["mapa"],
			"tipo": clase.tipo,
			"esqueleto": clase.esqueleto,
			"componentes_corte": clase.componentes_corte,
			"clases_dinamicas": orbitas.clases,
			"parabolico_sospechoso": orbitas.parabolico_sospechoso,
			"semihiperbolico_candidato": orbitas.semihiperbolico_candidato,
			"consistencia_subhiperbolica": datos["consistencia_subhiperbolica"],
			"orbitas": [
				{
					"punto": o.punto,
					"multiplicidad": o.multiplicidad,
					"etiqueta": o.etiqueta,
					"preperiodo": o.preperiodo,
					"periodo": o.periodo,
					"multiplicador": o.multiplicador,
				}
				for o in orbitas.orbitas
			],
		}
		if clase.tipo == CONTIENE_Y:
			arbol = clase.testigo
			self.escribir_json(config, "testigo_y.json", self.informe(config, res, testigo=arbol))
			resumen["testigo"] = {"centro": arbol.centro, "puntas": list(arbol.puntas)}
		self.escribir_json(config, "clasificacion.json", self.informe(config, res, clasificacion=resumen))
		self.stdout.write(f"tipo: {clase.tipo}")
		self.stdout.write(f"clases dinámicas: {', '.join(orbitas.clases) or 'ninguna'}")
