from .backend import (
    DEFAULT_TOKEN_ENV,
    AuthError,
    BackendError,
    Fixture,
    FixtureMiss,
    LiveBackend,
    ReplayBackend,
    complete,
    fixture_key,
    write_fixture,
)
from .extract import NoCodeBlock, extract_spec
from .prompt import (
    DEFAULT_GRAMMAR_DOC,
    PromptBlocks,
    build_prompt,
    build_prompt_blocks,
    render_schema,
)
from .tasks import TASKS, TaskDef

__all__ = [
    "AuthError",
    "BackendError",
    "DEFAULT_GRAMMAR_DOC",
    "DEFAULT_TOKEN_ENV",
    "Fixture",
    "FixtureMiss",
    "LiveBackend",
    "NoCodeBlock",
    "PromptBlocks",
    "ReplayBackend",
    "TASKS",
    "TaskDef",
    "build_prompt",
    "build_prompt_blocks",
    "complete",
    "extract_spec",
    "fixture_key",
    "render_schema",
    "write_fixture",
]
