from abc import ABC, abstractmethod
from typing import Dict, Any


class Reporter(ABC):
    """Abstract reporter interface for recording result rows."""

    @abstractmethod
    def record(self, row: Dict[str, Any]) -> None:
        """Record a single row."""
        pass

    @abstractmethod
    def finalize(self) -> None:
        """Flush rows to their destination."""
        pass
