import sys
from typing import Callable, List, Optional, TypeVar

from joblib import Parallel, delayed
from tqdm import tqdm

from settings import get_settings

T = TypeVar("T")


def run_chunked(
    fn: Callable[[int, int], T],
    total: int,
    n_jobs: Optional[int] = None,
    chunk_size: Optional[int] = None,
    desc: Optional[str] = None,
) -> List[T]:
    """Apply fn(start, stop) to consecutive row ranges; results come back in range order."""
    settings = get_settings()
    chunk_size = chunk_size or settings.chunk_size
    n_jobs = settings.n_jobs if n_jobs is None else n_jobs
    bounds = [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]
    if not bounds:
        return []
    if n_jobs == 1 or len(bounds) == 1:
        results = (fn(a, b) for a, b in bounds)
    else:
        results = Parallel(n_jobs=n_jobs, prefer="threads", return_as="generator")(
            delayed(fn)(a, b) for a, b in bounds
        )
    return list(
        tqdm(
            results,
            total=len(bounds),
            desc=desc,
            file=sys.stderr,
            leave=False,
            disable=not settings.progress or len(bounds) < 2,
        )
    )
