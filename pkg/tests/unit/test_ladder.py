"""
Unit Tests for the concurrent epsilon-ladder runner.

Tests ordering, bounded concurrency, failure capture and progress reporting.
"""

import threading
import time

import pytest

from shockwkb.exceptions import SolverError
from shockwkb.verification import run_ladder, run_ladder_sync

LADDER = [0.2, 0.1, 0.05, 0.025, 0.0125]


class TestRunLadder:
    """Test the async runner."""

    @pytest.mark.asyncio
    async def test_results_in_ladder_order(self):
        """Later eps finish first but results follow the ladder."""

        def run(eps):
            time.sleep(eps / 10)
            return eps * 2

        results = await run_ladder(LADDER, run, max_concurrency=5)

        assert [r["epsilon"] for r in results] == LADDER
        assert [r["result"] for r in results] == [eps * 2 for eps in LADDER]
        assert all(r["success"] for r in results)

    @pytest.mark.asyncio
    async def test_concurrency_bound(self):
        """Never more than max_concurrency runs at once."""
        lock = threading.Lock()
        state = {"running": 0, "peak": 0}

        def run(eps):
            with lock:
                state["running"] += 1
                state["peak"] = max(state["peak"], state["running"])
            time.sleep(0.02)
            with lock:
                state["running"] -= 1
            return eps

        await run_ladder(LADDER * 2, run, max_concurrency=2)

        assert state["peak"] <= 2

    @pytest.mark.asyncio
    async def test_failures_are_captured(self):
        """One failing eps does not stop the others."""

        def run(eps):
            if eps == 0.05:
                raise SolverError("Non-finite values at step 7", code="NAN_DETECTED", step=7)
            return eps

        results = await run_ladder(LADDER, run)

        failed = [r for r in results if not r["success"]]
        assert len(failed) == 1
        assert failed[0]["epsilon"] == 0.05
        assert isinstance(failed[0]["exception"], SolverError)
        assert "NAN_DETECTED" in failed[0]["error"]
        assert sum(1 for r in results if r["success"]) == 4

    @pytest.mark.asyncio
    async def test_progress_callback(self):
        updates = []

        def run(eps):
            if eps == 0.1:
                raise ValueError("bad eps")
            return eps

        await run_ladder(LADDER, run, progress_callback=updates.append)

        assert len(updates) == len(LADDER)
        assert sorted(u["processed"] for u in updates) == [1, 2, 3, 4, 5]
        assert all(u["total"] == 5 for u in updates)
        assert max(u["error_count"] for u in updates) == 1
        assert {u["epsilon"] for u in updates} == set(LADDER)

    @pytest.mark.asyncio
    async def test_invalid_concurrency(self):
        with pytest.raises(ValueError, match="max_concurrency"):
            await run_ladder(LADDER, lambda eps: eps, max_concurrency=0)

    @pytest.mark.asyncio
    async def test_empty_ladder(self):
        assert await run_ladder([], lambda eps: eps) == []


class TestRunLadderSync:
    """Test the blocking wrapper."""

    def test_returns_results(self):
        assert run_ladder_sync([0.1, 0.05], lambda eps: -eps) == [-0.1, -0.05]

    def test_reraises_first_failure(self):
        def run(eps):
            if eps < 0.1:
                raise SolverError(f"Time step collapsed at eps={eps}", code="CFL_COLLAPSE")
            return eps

        with pytest.raises(SolverError, match="eps=0.05"):
            run_ladder_sync([0.2, 0.1, 0.05, 0.025], run)
