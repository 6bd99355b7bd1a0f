"""Pull the reward program out of a completion response."""

from __future__ import annotations

import re
import warnings


class NoCodeBlock(ValueError):
    pass


_FENCE_RE = re.compile(r"```([^\n`]*)\n(.*?)```", re.DOTALL)


def extract_spec(response: str) -> str:
    """Return the first fenced code block tagged for the reward language.

    Blocks tagged `rsp` win; untagged blocks are accepted as a fallback. With
    several candidates the first is used and a warning is emitted.
    """
    blocks = [(tag.strip(), body) for tag, body in _FENCE_RE.findall(response)]
    if not blocks:
        raise NoCodeBlock("response contains no fenced code block")
    candidates = [body for tag, body in blocks if tag == "rsp"]
    if not candidates:
        candidates = [body for tag, body in blocks if tag == ""]
    if not candidates:
        raise NoCodeBlock("response contains no code block tagged rsp (or untagged)")
    if len(candidates) > 1:
        warnings.warn("response contains multiple candidate code blocks; using the first")
    return candidates[0].strip() + "\n"
