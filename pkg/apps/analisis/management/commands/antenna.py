from core.almacenamiento import escribir_superposicion
from core.format import formatear_real

from ...comandos import ComandoAnalisis
from ...services.antena import escanear


class Command(ComandoAnalisis):
	help = "Escanea bolas a varias escalas buscando c-antenas; escribe informe JSON, tabla CSV y superposición PNG."
	nombre = "antenna"

	def agregar_argumentos(self, parser):
		parser.add_argument("--scales", type=int, dest="escalas")
		parser.add_argument("--centers", type=int, dest="centros")
		parser.add_argument("--c-min", type=float, dest="c_min")
		parser.add_argument("--b", type=float, dest="b", help="constante b de la cota de dimensión, si se conoce")

	def ejecutar(self, config, steps, **opciones):
		res = escanear(config, steps=steps, b=opciones.get("b"))
		datos = self.exigir_ok(res)
		escaneo = datos["informe"]
		certificados = [
			{
				"centro_bola": c.centro_bola,
				"radio_bola": c.radio_bola,
				"c": c.c,
				"diametro_region": c.diametro_region,
				"centro_y": c.arbol.centro,
				"puntas": list(c.arbol.puntas),
			}
			for c in escaneo.certificados
		]
		resumen = {
			"mapa": datos["mapa"],
			"escalas": escaneo.escalas,
			"centros": escaneo.centros,
			"peor_por_escala": escaneo.peor_por_escala,
			"inf_global": escaneo.inf_global,
			"fallas": escaneo.fallas,
			"veredicto": escaneo.veredicto,
			"cota": escaneo.cota,
			"certificados": certificados,
			"certificados_invalidos": datos["certificados_invalidos"],
			"propagacion": datos["propagacion"],
		}
		self.escribir_json(config, "antena.json", self.informe(config, res, antena=resumen))
		self.escribir_csv(
			config,
			"antena.csv",
			["escala", "centro_re", "centro_im", "c", "estado"],
			[(f["escala"], f["centro"].real, f["centro"].imag, f["c"], f["estado"]) for f in escaneo.filas],
		)
		escribir_superposicion(config.directorio / "antena.png", datos["continuo"], escaneo.certificados)
		inf_c = "ninguno" if escaneo.inf_global is None else formatear_real(escaneo.inf_global, 6)
		self.stdout.write(f"veredicto: {escaneo.veredicto}")
		self.stdout.write(f"inf c: {inf_c}; bolas sin antena: {len(escaneo.fallas)} de {len(escaneo.filas)}")
		if escaneo.cota is not None:
			self.stdout.write(f"cota: {escaneo.cota.forma}")
