"""Models for command-line runs and the acceptance corpus."""
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from synmon.config import DEFAULT_SEED
from synmon.dautomata.models import CapacityLimits
from synmon.freemon.models import Variety


class Command(str, Enum):
    SYN = "syn"
    MIN = "min"
    DUAL = "dual"
    CHECK = "check"
    CORPUS = "corpus"
    EVAL = "eval"


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"
    DOT = "dot"
    CSV = "csv"


class RunConfig(BaseModel):
    """Everything one invocation needs; logged with each run."""
    command: Command = Field(..., description="Subcommand being run")
    variety: Variety = Field(default_factory=lambda: Variety.of("set"), description="Ambient variety")
    alphabet: Optional[Tuple[str, ...]] = Field(None, description="Letters, when given on the command line")
    regex: Optional[str] = Field(None, description="Regular expression for L")
    dfa_path: Optional[Path] = Field(None, description="JSON file holding a DFA for L")
    output_format: OutputFormat = Field(OutputFormat.TABLE, description="Output format")
    limits: CapacityLimits = Field(default_factory=CapacityLimits, description="Capacity guards")
    seed: int = Field(DEFAULT_SEED, description="Seed for sampled recognition checks")
    max_length: int = Field(4, ge=0, description="Word length bound for the oracle cross-check")
    workers: int = Field(1, ge=1, description="Worker processes for the corpus run")


class CorpusEntry(BaseModel):
    name: str = Field(..., description="Short name of the language")
    regex: str = Field(..., description="Regular expression")
    alphabet: str = Field("ab", description="Alphabet letters")


class CheckOutcome(BaseModel):
    """Result of one named check on one language and variety"""
    check: str
    passed: bool
    message: str
    witnesses: List[str] = Field(default_factory=list)


class LanguageResult(BaseModel):
    """All checks of one corpus language, by variety"""
    index: int
    name: str
    regex: str
    outcomes: Dict[str, List[CheckOutcome]] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(o.passed for checks in self.outcomes.values() for o in checks)
