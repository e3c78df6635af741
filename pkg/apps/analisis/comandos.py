"""Base común de los comandos de gestión del análisis.

Flags globales: --config, --seed, --out, --threads, --resolution, --map,
--max-iter y --pasos (registra Steps en el informe). Cada comando agrega los
suyos en `agregar_argumentos` e implementa `ejecutar`.

Códigos de salida: 2 para errores de parseo o configuración, 1 cuando el
análisis no cumple su contrato (servicio con ok=False, continuo no conexo).
"""

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.format import escribir_csv, escribir_json
from core.steps import Steps
from core.tolerancias import restablecer_tolerancias

from .configuracion import cargar_configuracion

# Flags que sobrescriben campos de ConfiguracionEjecucion (dest == campo).
CAMPOS_FLAGS = (
	"mapa",
	"resolucion",
	"max_iter",
	"semilla",
	"salida",
	"hilos",
	"escalas",
	"centros",
	"c_min",
	"profundidad",
	"grados",
)


class ComandoAnalisis(BaseCommand):
	nombre = ""

	def add_arguments(self, parser):
		parser.add_argument("--config", help="archivo clave=valor con la configuración de la corrida")
		parser.add_argument("--seed", type=int, dest="semilla")
		parser.add_argument("--out", dest="salida", help="directorio de salida")
		parser.add_argument("--threads", type=int, dest="hilos")
		parser.add_argument("--resolution", type=int, dest="resolucion")
		parser.add_argument("--map", dest="mapa", help='mapa polinomial, p. ej. "poly: i, 0, 1"')
		parser.add_argument("--max-iter", type=int, dest="max_iter")
		parser.add_argument("--pasos", action="store_true", dest="registrar", help="incluir los pasos en el informe")
		self.agregar_argumentos(parser)

	def agregar_argumentos(self, parser):
		pass

	def handle(self, *args, **opciones):
		try:
			config = cargar_configuracion(
				opciones.get("config"),
				**{campo: opciones.get(campo) for campo in CAMPOS_FLAGS},
			)
		except ValueError as e:
			raise CommandError(f"configuración inválida: {e}", returncode=2) from e
		config.aplicar_tolerancias()
		steps = Steps() if opciones.get("registrar") else None
		try:
			# "config" (ruta de --config) ya se consumió arriba; no colisionar con el parámetro.
			resto = {k: v for k, v in opciones.items() if k != "config"}
			self.ejecutar(config, steps, **resto)
		finally:
			restablecer_tolerancias()

	def ejecutar(self, config, steps, **opciones):
		raise NotImplementedError

	# --- Salida ---------------------------------------------------------------

	def informe(self, config, res, **datos):
		"""Informe JSON: versión, eco de la configuración y datos del comando."""
		return {
			"version": settings.ANALISIS_VERSION,
			"comando": self.nombre,
			"configuracion": config.como_dict(),
			**datos,
			"pasos": res["pasos"],
		}

	def escribir_json(self, config, nombre_archivo, informe):
		ruta = escribir_json(config.directorio / nombre_archivo, informe)
		self.stdout.write(f"escrito {ruta}")
		return ruta

	def escribir_csv(self, config, nombre_archivo, encabezados, filas):
		ruta = escribir_csv(config.directorio / nombre_archivo, encabezados, filas)
		self.stdout.write(f"escrito {ruta}")
		return ruta

	def exigir_ok(self, res):
		if not res["ok"]:
			raise CommandError(f"{self.nombre}: {res['error']}", returncode=1)
		return res["datos"]


__all__ = [
	"CAMPOS_FLAGS",
	"ComandoAnalisis",
]
