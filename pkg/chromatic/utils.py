import logging
import sys
from collections.abc import Callable, Hashable, Iterable, Sequence
from fractions import Fraction
from typing import TypeVar

import anyio
import anyio.to_thread
from loguru import logger
from networkx.utils import UnionFind

from chromatic.errors import NotPrime
from chromatic.settings import settings

if sys.version_info < (3, 11):
    from exceptiongroup import BaseExceptionGroup

T = TypeVar("T", bound=Hashable)
Number = TypeVar("Number", int, Fraction)


class InterceptLogHandler(logging.Handler):
    """
    Default log handler from examples in loguru documentaion.
    See https://loguru.readthedocs.io/en/stable/overview.html#entirely-compatible-with-standard-logging
    """

    def emit(self, record: logging.LogRecord):
        """Intercept standard logging records."""
        # Get corresponding Loguru level if it exists
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Find caller from where originated the logged message
        frame, depth = logging.currentframe(), 2
        while frame.f_code.co_filename == logging.__file__:
            if frame.f_back:
                frame = frame.f_back
                depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def configure_logging(level: str | None = None) -> None:
    """
    Route loguru (and anything logging through the standard library) to stderr at the given level.

    Args:
        level: A loguru level name. Defaults to `settings.log_level`.
    """
    logger.remove()
    logger.add(sys.stderr, level=level or settings.log_level)
    logging.basicConfig(handlers=[InterceptLogHandler()], level=0, force=True)


def find_orbits(generators: Sequence[Callable[[T], T]], space: Iterable[T]) -> list[list[T]]:
    """
    Orbits of the group generated by `generators` acting on `space`.

    Args:
        generators: Maps space -> space, one per group generator.
        space: A finite set closed under every generator.

    Returns:
        The orbits, each listed in the iteration order of `space`.
    """
    space = list(space)
    blocks = UnionFind(space)
    for action in generators:
        for x in space:
            blocks.union(x, action(x))
    grouped: dict[T, list[T]] = {}
    for x in space:
        grouped.setdefault(blocks[x], []).append(x)
    return list(grouped.values())


def parallel_sum(tasks: Sequence[Callable[[], Number]], threads: int | None = None) -> Number:
    """
    Evaluate independent zero-argument tasks and add up their results.

    The tasks run on `anyio` worker threads when more than one thread is allowed; the reduction always adds
    the results in task order, so the outcome does not depend on scheduling.

    Args:
        tasks: The summands, as callables.
        threads: Worker thread limit. Defaults to `settings.threads`.
    """
    threads = threads or settings.threads
    if threads <= 1 or len(tasks) <= 1:
        return sum((task() for task in tasks), 0)

    results: list[Number] = [0] * len(tasks)

    async def run_all():
        limiter = anyio.CapacityLimiter(threads)

        async def run_one(index: int, task: Callable[[], Number]):
            results[index] = await anyio.to_thread.run_sync(task, limiter=limiter)

        async with anyio.create_task_group() as tg:
            for index, task in enumerate(tasks):
                tg.start_soon(run_one, index, task)

    try:
        anyio.run(run_all)
    except BaseExceptionGroup as group:
        # surface the first task failure as-is so callers can catch the domain error
        first = group.exceptions[0]
        while isinstance(first, BaseExceptionGroup):
            first = first.exceptions[0]
        raise first from None

    return sum(results, 0)


def is_prime(n: int) -> bool:
    """Trial-division primality test (the primes used here are tiny)."""
    if n < 2:
        return False
    divisor = 2
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 1
    return True


def require_prime(p: int) -> int:
    """Return `p` unchanged, raising `NotPrime` if it is not a prime."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not a prime.")
    return p


def p_part(order: int, p: int) -> int:
    """The largest power of `p` dividing `order`."""
    part = 1
    while order % p == 0:
        order //= p
        part *= p
    return part


def parse_height_range(text: str) -> range:
    """
    Parse a height range such as `3`, `1..3` or `-1..2` (inclusive bounds).

    Raises:
        ValueError: When the text is not a range or the range is empty.
    """
    low, sep, high = text.strip().partition("..")
    try:
        start = int(low)
        stop = int(high) if sep else start
    except ValueError:
        raise ValueError(f"Invalid height range: {text!r}. Expected `n` or `a..b`.") from None
    if stop < start:
        raise ValueError(f"Empty height range: {text!r}.")
    return range(start, stop + 1)
