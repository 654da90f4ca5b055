__all__ = ['parse_point', 'round_significant', 'load_json', 'write_json', 'write_table_csv', 'read_table_csv',
           'write_configuration_csv', 'read_configuration_csv', 'get_resource_path']

# Lazy loading helpers
def __getattr__(name):
    if name in __all__:
        from .helper import (parse_point, round_significant, load_json, write_json, write_table_csv, read_table_csv,
                             write_configuration_csv, read_configuration_csv, get_resource_path)
        return locals()[name]
    raise AttributeError(f"module {__name__} has no attribute {name}")
