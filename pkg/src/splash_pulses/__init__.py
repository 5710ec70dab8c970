from splash_pulses.utils.logging import register_trace_level as _register_trace_level

__version__ = "0.1.0"

_register_trace_level()
