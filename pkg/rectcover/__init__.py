# __init__.py
__version__ = "0.1.0"
version = __version__

from .manager import RectCoverManager
from .instances import InstanceFactoryManager
from .loaders import LoaderFactory

__all__ = [
    'RectCoverManager',
    'InstanceFactoryManager',
    'LoaderFactory',
    ]
