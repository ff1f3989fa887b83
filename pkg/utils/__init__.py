from .logger import CheckLogger, Tally
from .registry import entrypoint, is_entry, list_entries, register_lax, register_suite
