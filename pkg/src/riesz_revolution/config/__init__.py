from .settings import (get_seed,
                       get_log_level,
                       get_optimizer_options,
                       get_advanced_optimizer_options)

__all__ = ['get_seed', 'get_log_level', 'get_optimizer_options', 'get_advanced_optimizer_options']
