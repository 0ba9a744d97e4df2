"""VoxFuse stage one Gateway modules."""

import attr
import pkgutil
import logging
from types import ModuleType
from typing import Callable, Union
from voxfuse.core import Settings
from voxfuse.mvs.extractor import Extractor
from voxfuse.mvs.aggregator import Aggregator
from voxfuse.core.errors import FieldError, FieldErrorCode, VoxFuseError
import voxfuse.mvs.extractors as extractors
import voxfuse.mvs.aggregators as aggregators

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True)
class Gateway:
    extractor: Extractor
    aggregator: Aggregator
    settings: Settings


@attr.s(auto_attribs=True)
class ComponentInitializer:
    initializer: Callable[[Union[Settings, dict]], object]

    def create(self, settings: Union[Settings, dict]):
        return self.initializer(settings)


class _ProviderMapper:
    def __init__(self, package: ModuleType, component: str, field: str):
        self.package = package
        self.component = component
        self.field = field

    @property
    def providers(self):
        # Register VoxFuse components
        return {
            name: __import__(f"{self.package.__name__}.{name}", fromlist=[name])
            for _, name, _ in pkgutil.iter_modules(self.package.__path__)
        }

    def __getitem__(self, key) -> ComponentInitializer:
        def initializer(settings: Union[Settings, dict]):
            provider = self.providers.get(key)
            if provider is None:
                raise FieldError({self.field: FieldErrorCode.invalid})
            try:
                settings_value: Settings = (
                    Settings(**settings) if isinstance(settings, dict) else settings
                )
                return getattr(provider, self.component)(settings_value)
            except VoxFuseError:
                raise
            except Exception as e:
                raise VoxFuseError(f"Failed to setup {self.field} '{key}'") from e

        return ComponentInitializer(initializer)


extractor = _ProviderMapper(extractors, "Extractor", "extractor")
aggregator = _ProviderMapper(aggregators, "Aggregator", "aggregator")


def create(settings: Union[Settings, dict]) -> Gateway:
    settings_value = Settings(**settings) if isinstance(settings, dict) else settings
    return Gateway(
        extractor=extractor[settings_value.extractor].create(settings_value),
        aggregator=aggregator[settings_value.aggregator].create(settings_value),
        settings=settings_value,
    )


logger.info(f'''
VoxFuse stage one gateway initialized.
Registered extractors: {','.join(extractor.providers)}
Registered aggregators: {','.join(aggregator.providers)}
''')
