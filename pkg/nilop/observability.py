import logging
import typing as tp

from tqdm import tqdm

from nilop.config import NilopConfig

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

T = tp.TypeVar("T")


def setup_logging(level: str = "INFO") -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
    )


def progress(
    iterable: tp.Iterable[T],
    desc: str,
    config: NilopConfig | None = None,
    total: int | None = None,
) -> tp.Iterable[T]:
    show = config.show_progress if config is not None else False
    return tqdm(iterable, desc=desc, total=total, disable=not show)
