"""Configuration package."""

from .dependency_injection import ServiceContainer, initialize_services
from .settings import get_settings, reload_settings, AppSettings

__all__ = [
    'ServiceContainer',
    'initialize_services',
    'get_settings',
    'reload_settings',
    'AppSettings',
]
