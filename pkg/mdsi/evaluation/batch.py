"""
Batch scoring of dataset manifests

Entries are scored in a thread pool and collected in manifest order, so
results do not depend on the thread count. A failing entry is recorded
and excluded instead of stopping the run.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from ..core.config import MetricConfig
from ..core.errors import BatchAbort, MDSIError
from ..core.models import Dataset, ManifestEntry
from ..core.pipeline import MDSIMetric
from ..loaders.image_loader import load_image
from ..utils.logging import get_logger

logger = get_logger("evaluation.batch")

T = TypeVar("T")

MAX_FAILURE_RATIO = 0.1


@dataclass
class BatchResult:
    """Per-entry outcomes of one dataset, in manifest order"""
    dataset: Dataset
    values: List[Optional[np.ndarray]]
    failures: Dict[int, str] = field(default_factory=dict)
    # Scores whose combined map had negatives under a fractional power
    negative_maps: int = 0

    @property
    def ok_indices(self) -> List[int]:
        return [i for i, value in enumerate(self.values) if value is not None]

    def column(self, index: int = 0) -> np.ndarray:
        """Scores of one variant over the successful entries"""
        return np.array([self.values[i][index] for i in self.ok_indices], dtype=np.float64)

    @property
    def scores(self) -> np.ndarray:
        return self.column(0)

    @property
    def mos(self) -> np.ndarray:
        return np.array([self.dataset.entries[i].mos for i in self.ok_indices], dtype=np.float64)

    def entries_ok(self) -> List[ManifestEntry]:
        return [self.dataset.entries[i] for i in self.ok_indices]


class BatchScorer:
    """
    Scores every entry of a dataset under one or more metric configurations
    """

    def __init__(
        self,
        configs: Sequence[MetricConfig],
        threads: int = 1,
        max_failure_ratio: float = MAX_FAILURE_RATIO,
    ):
        """
        Initialize the batch scorer

        Args:
            configs: Configurations to score each pair under; images are
                loaded and prepared once per pair
            threads: Worker threads
            max_failure_ratio: Abort when more than this share of entries fail
        """
        if not configs:
            raise ValueError("at least one metric configuration is required")
        self.configs = list(configs)
        self.threads = max(1, int(threads))
        self.max_failure_ratio = max_failure_ratio
        self.metric = MDSIMetric(self.configs[0])

    def score_entry(self, entry: ManifestEntry) -> Tuple[np.ndarray, int]:
        """
        Scores of one entry under every configuration

        Returns:
            The scores, and how many of them pooled negative map values
        """
        pair = self.metric.prepare(load_image(entry.ref_path), load_image(entry.dist_path))
        results = [self.metric.score_prepared(pair, cfg) for cfg in self.configs]
        values = np.array([r.value for r in results], dtype=np.float64)
        return values, sum(1 for r in results if r.negative_values)

    def score(self, dataset: Dataset) -> BatchResult:
        """
        Score a dataset

        Raises:
            BatchAbort: more than max_failure_ratio of the entries failed
        """
        values: List[Optional[np.ndarray]] = []
        failures: Dict[int, str] = {}
        negative_maps = 0
        for index, (outcome, error) in enumerate(self._map(self.score_entry, dataset.entries)):
            if outcome is None:
                values.append(None)
            else:
                values.append(outcome[0])
                negative_maps += outcome[1]
            if error is not None:
                failures[index] = error
                logger.warning("entry %d (%s) failed: %s", index, dataset.entries[index].dist_path, error)

        if len(failures) > self.max_failure_ratio * len(dataset):
            raise BatchAbort(len(failures), len(dataset))
        if negative_maps:
            logger.warning(
                "%d of %d scores pooled negative map values; fractional powers used the "
                "real part of the principal root",
                negative_maps, len(values) * len(self.configs),
            )
        return BatchResult(
            dataset=dataset, values=values, failures=failures, negative_maps=negative_maps
        )

    def _map(self, fn: Callable[[ManifestEntry], T], entries: Sequence[ManifestEntry]):
        def isolated(entry: ManifestEntry):
            try:
                return fn(entry), None
            except (MDSIError, OSError, ValueError) as e:
                return None, str(e)

        if self.threads == 1:
            return [isolated(entry) for entry in entries]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(isolated, entries))
