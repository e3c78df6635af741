"""steps.py — Trazabilidad opcional de los análisis.

Propósito
---------
Permitir que los servicios registren (cuando se pida) la secuencia de etapas
de un análisis: parseo del mapa, cálculo del conjunto de Julia, esqueleto,
escaneo de antenas, etc. Es útil para explicar un resultado y para depurar
corridas largas; es completamente opcional.

API pública
-----------
- Steps.begin(nombre_operacion)
- Steps.add(mensaje, estado=None)
- Steps.end(resultado=None)
- Steps.to_list(), Steps.clear(), Steps.resumen()

Convenciones
------------
- Cada paso: {"op", "state", "etapa", "msg"} y, si se pidió, "ts".
- Las marcas de tiempo están apagadas por defecto: los informes JSON deben
  ser idénticos byte a byte entre corridas con la misma semilla.
- Cada paso se replica en el logger del módulo a nivel DEBUG.
"""

import logging
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class Steps:
    """Registrador de etapas.

    Uso típico:
        s = Steps()
        s.begin("julia")
        s.add("iteración de escape", {"resolucion": 512})
        s.end({"celdas": 4100})
    """

    def __init__(self, con_marca_tiempo: bool = False):
        self._historial: List[Dict[str, Any]] = []
        self._op_actual: Optional[str] = None
        self._abierta: bool = False
        self._con_marca_tiempo = con_marca_tiempo

    def begin(self, nombre_operacion: str):
        """Comienza una operación; si había otra abierta la cierra sin resultado."""
        if self._abierta:
            self._registrar_paso(etapa="fin", msg="cierre implícito")
        self._op_actual = str(nombre_operacion)
        self._abierta = True
        self._registrar_paso(etapa="inicio", msg="inicio")

    def add(self, mensaje: str, estado: Any | None = None):
        if not self._abierta:
            self._op_actual = self._op_actual or "op_sin_nombre"
            self._abierta = True
            self._registrar_paso(etapa="inicio", msg="inicio implícito")
        self._registrar_paso(etapa="paso", msg=mensaje, state=estado)

    def end(self, resultado: Any | None = None):
        if not self._abierta:
            return
        payload: Dict[str, Any] = {} if resultado is None else {"resultado": resultado}
        self._registrar_paso(etapa="fin", msg="fin", state=payload)
        self._abierta = False
        self._op_actual = None

    def to_list(self) -> List[Dict[str, Any]]:
        return list(self._historial)

    def clear(self):
        self._historial.clear()
        self._op_actual = None
        self._abierta = False

    def resumen(self) -> List[str]:
        """Una línea legible por paso intermedio (para la salida de los comandos)."""
        return [f"[{p['op']}] {p.get('msg', '')}" for p in self._historial if p["etapa"] == "paso"]

    def __iter__(self):
        return iter(self._historial)

    def __len__(self):
        return len(self._historial)

    def _registrar_paso(self, etapa: str, msg: Optional[str] = None, state: Any | None = None):
        if state is None:
            state_dict: Dict[str, Any] = {}
        elif isinstance(state, dict):
            state_dict = state
        else:
            state_dict = {"valor": state}
        paso: Dict[str, Any] = {"op": self._op_actual or "", "state": state_dict, "etapa": etapa}
        if msg is not None:
            paso["msg"] = msg
        if self._con_marca_tiempo:
            paso["ts"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        logger.debug("%s/%s: %s %s", paso["op"], etapa, msg or "", state_dict or "")
        self._historial.append(paso)


__all__ = [
    "Steps",
]
