"""Interface."""

import attr
import logging
import functools
from typing import Callable, List, TypeVar, Union
from voxfuse.core import Settings
from voxfuse.core.models import Message, Stage1Result, Stage2Result
from voxfuse.core.errors import VoxFuseError
from voxfuse.core.utils import jsonify
from voxfuse.pipeline.dataset import Dataset, load_dataset
from voxfuse.pipeline import stages

logger = logging.getLogger(__name__)

S = TypeVar("S")


def abort(error: Exception, stage: str):
    return (
        None,
        [
            Message(
                stage=stage,
                code=error.code if hasattr(error, 'code') else VoxFuseError.code,
                message=f"{error}",
                details=error.details if hasattr(error, 'details') else None,
            )
        ],
    )


def fail_safe(stage: str):
    def catcher(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as error:
                logger.exception(error)

                return IDeserialize(functools.partial(abort, stage=stage, error=error))
        return wrapper
    return catcher


@attr.s(auto_attribs=True)
class IDeserialize:
    deserialize: Callable[[], S]

    def parse(self):
        result = self.deserialize()
        if isinstance(result, IDeserialize):
            return result.parse()
        return result


@attr.s(auto_attribs=True)
class IRunWith:
    stage: str
    action: Callable[[Settings], IDeserialize]

    def with_(self, settings: Union[Settings, dict]) -> IDeserialize:
        def action():
            settings_value = Settings(**settings) if isinstance(settings, dict) else settings
            return self.action(settings_value)

        return fail_safe(self.stage)(action)()


def _dataset(dataset: Union[Dataset, str]) -> Dataset:
    return dataset if isinstance(dataset, Dataset) else load_dataset(dataset)


def _done(result) -> IDeserialize:
    return IDeserialize(lambda: (result, []))


class Sweep:
    @staticmethod
    def run(dataset: Union[Dataset, str], output: str = None) -> IRunWith:
        logger.debug(f'run the multi-view stereo stage. dataset: {dataset}')

        def action(settings: Settings) -> IDeserialize:
            return _done(stages.run_stage1(_dataset(dataset), settings, output))

        return IRunWith("sweep", action)


class Fusion:
    @staticmethod
    def run(
        dataset: Union[Dataset, str], stage1: List[Stage1Result], output: str = None
    ) -> IRunWith:
        logger.debug(f'run the fusion stage over {len(stage1)} frames')

        def action(settings: Settings) -> IDeserialize:
            return _done(stages.run_stage2(_dataset(dataset), stage1, settings, output))

        return IRunWith("fuse", action)


class Evaluation:
    @staticmethod
    def run(
        dataset: Union[Dataset, str], stage1: List[Stage1Result], stage2: Stage2Result
    ) -> IRunWith:
        logger.debug('evaluate the reconstruction')

        def action(settings: Settings) -> IDeserialize:
            return _done(stages.run_eval(_dataset(dataset), stage1, stage2, settings))

        return IRunWith("evaluate", action)


class Reconstruction:
    @staticmethod
    def run(dataset: Union[Dataset, str], output: str = None) -> IRunWith:
        logger.debug(f'run the full reconstruction. dataset: {dataset}')

        def action(settings: Settings) -> IDeserialize:
            logger.debug(f'settings: {jsonify(settings)}')
            return _done(stages.run(_dataset(dataset), settings, output))

        return IRunWith("run", action)
