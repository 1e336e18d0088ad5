"""
Async fan-out runner for independent solver tasks.

Tasks run on a thread pool behind a semaphore of width `jobs`; results come
back in submission order so output does not depend on the schedule.
"""
import asyncio
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


@dataclass
class Task:
    """One unit of work: task_id, callable and positional args."""

    task_id: str
    func: Callable[..., Any]
    args: Tuple[Any, ...] = field(default_factory=tuple)


@dataclass
class TaskResult:
    """Value or error of a finished task."""

    task_id: str
    value: Any = None
    error: Optional[BaseException] = None
    latency_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.error is None


class TaskRunner:
    """
    Runs tasks concurrently, at most `jobs` at a time.

    Logs each finished batch to <log_dir>/runner/batches.jsonl and each failed
    task to <log_dir>/runner/errors.jsonl when log_dir is set.
    """

    def __init__(self, jobs: int = 1, log_dir: Optional[str] = None):
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1: got {jobs}")
        self.jobs = jobs
        self.log_dir = log_dir

    async def run(self, tasks: Sequence[Task]) -> List[TaskResult]:
        """
        Execute tasks and collect results.

        Args:
            tasks: Tasks in submission order

        Returns:
            List of TaskResult, same order as tasks. Exceptions are captured
            per task, never raised.
        """
        if not tasks:
            return []

        start_time = datetime.now()
        semaphore = asyncio.Semaphore(self.jobs)
        loop = asyncio.get_running_loop()

        with ThreadPoolExecutor(max_workers=self.jobs) as pool:

            async def execute(task: Task) -> TaskResult:
                async with semaphore:
                    started = datetime.now()
                    try:
                        value = await loop.run_in_executor(pool, lambda: task.func(*task.args))
                        return TaskResult(task.task_id, value=value, latency_ms=_elapsed_ms(started))
                    except Exception as e:
                        logger.warning(f"Task {task.task_id} failed: {e}")
                        self._log_error(task, e)
                        return TaskResult(task.task_id, error=e, latency_ms=_elapsed_ms(started))

            results = await asyncio.gather(*[execute(task) for task in tasks])

        self._log_batch(results, start_time)
        logger.info(
            f"Ran {len(results)} tasks with jobs={self.jobs} "
            f"({sum(1 for r in results if not r.ok)} failed) in {_elapsed_ms(start_time)} ms"
        )
        return list(results)

    def run_sync(self, tasks: Sequence[Task]) -> List[TaskResult]:
        """Blocking wrapper around run() for callers outside an event loop."""
        return asyncio.run(self.run(tasks))

    def _log_batch(self, results: List[TaskResult], start_time: datetime):
        """Log finished batch."""
        if not self.log_dir:
            return

        log_path = Path(self.log_dir) / "runner" / "batches.jsonl"
        log_path.parent.mkdir(parents=True, exist_ok=True)

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "jobs": self.jobs,
            "batch_size": len(results),
            "task_ids": [r.task_id for r in results],
            "failed": [r.task_id for r in results if not r.ok],
            "latency_ms": _elapsed_ms(start_time),
            "status": "success" if all(r.ok for r in results) else "partial",
        }

        with open(log_path, "a", encoding="utf-8") as f:
            f.write(json.dumps(log_entry, ensure_ascii=False) + "\n")

    def _log_error(self, task: Task, error: BaseException):
        """Log task error."""
        if not self.log_dir:
            return

        log_path = Path(self.log_dir) / "runner" / "errors.jsonl"
        log_path.parent.mkdir(parents=True, exist_ok=True)

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "task_id": task.task_id,
            "error_type": type(error).__name__,
            "error": str(error),
            "status": "error",
        }

        with open(log_path, "a", encoding="utf-8") as f:
            f.write(json.dumps(log_entry, ensure_ascii=False) + "\n")


def _elapsed_ms(start: datetime) -> int:
    return int((datetime.now() - start).total_seconds() * 1000)
