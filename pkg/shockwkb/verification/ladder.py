"""
Concurrent execution of independent per-epsilon runs.

Each run is a blocking numerical job; it is moved to a worker thread and
the number of simultaneous runs is bounded by a semaphore.
"""

import asyncio
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence

from shockwkb.constants import DEFAULT_MAX_CONCURRENCY
from shockwkb.error_formatter import ErrorFormatter, log_structured_error

logger = logging.getLogger(__name__)


async def run_ladder(
    ladder: Sequence[float],
    run: Callable[[float], Any],
    max_concurrency: int = DEFAULT_MAX_CONCURRENCY,
    progress_callback: Optional[Callable[[Dict[str, Any]], None]] = None,
) -> List[Dict[str, Any]]:
    """
    Run ``run(eps)`` for every eps with bounded concurrency.

    Args:
        ladder: Epsilon values
        run: Blocking function of eps
        max_concurrency: Maximum simultaneous runs (must be >= 1)
        progress_callback: Called after each finished run with a progress dict

    Returns:
        One dict per eps in ladder order:
        {"epsilon", "success", "result"} or {"epsilon", "success", "error", "exception"}

    Raises:
        ValueError: If max_concurrency is less than 1
    """
    if max_concurrency < 1:
        raise ValueError(f"max_concurrency must be >= 1, got {max_concurrency}")

    total = len(ladder)
    semaphore = asyncio.Semaphore(max_concurrency)
    finished = {"count": 0, "errors": 0}

    logger.info(f"Starting ladder: {total} runs, max_concurrency={max_concurrency}")

    async def run_one(index: int, eps: float) -> Dict[str, Any]:
        async with semaphore:
            try:
                result = await asyncio.to_thread(run, eps)
                outcome = {"epsilon": eps, "success": True, "result": result}
            except Exception as e:
                log_structured_error(
                    logger, e, component="ladder", context={"epsilon": eps, "run": f"{index + 1}/{total}"}
                )
                finished["errors"] += 1
                outcome = {
                    "epsilon": eps,
                    "success": False,
                    "error": ErrorFormatter.format_ladder_error(
                        eps, e, run_info={"run": index + 1, "total_runs": total}
                    ),
                    "exception": e,
                }
        finished["count"] += 1
        if progress_callback:
            progress_callback(
                {
                    "processed": finished["count"],
                    "total": total,
                    "error_count": finished["errors"],
                    "epsilon": eps,
                }
            )
        return outcome

    gathered = await asyncio.gather(
        *[run_one(i, eps) for i, eps in enumerate(ladder)], return_exceptions=True
    )

    results = []
    for eps, outcome in zip(ladder, gathered):
        if isinstance(outcome, BaseException):
            logger.error(f"Ladder run exception for eps={eps}: {outcome}")
            results.append({"epsilon": eps, "success": False, "error": str(outcome), "exception": outcome})
        else:
            results.append(outcome)

    logger.info(
        f"Ladder complete: {sum(1 for r in results if r['success'])}/{total} runs successful"
    )
    return results


def run_ladder_sync(
    ladder: Sequence[float],
    run: Callable[[float], Any],
    max_concurrency: int = DEFAULT_MAX_CONCURRENCY,
) -> List[Any]:
    """
    Blocking wrapper: results in ladder order, re-raising the first failure.
    """
    results = asyncio.run(run_ladder(ladder, run, max_concurrency))
    for outcome in results:
        if not outcome["success"]:
            raise outcome["exception"]
    return [outcome["result"] for outcome in results]
