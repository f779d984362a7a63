"""Prompt construction: language header, retrieved samples, labeled request."""

from __future__ import annotations

import json
import re
from typing import Sequence

from ..errors import PromptTooLarge

HEADER = """\
You write DAOLang programs. DAOLang describes governance proposal actions.

Grammar:
  statement   := assignment | transaction        (ends with ';' or a newline)
  assignment  := name '<-' expr
  transaction := network '(' protocol ':' action '(' args ')' { ',' protocol ':' action '(' args ')' } ')'
  expr        := name | constant | 'network{' chainId '}' | 'protocol{' address* '}' | '{' key ':' expr, ... '}'
  constant    := 0x-address (40 hex digits) | integer | "string" | true | false
  '#' starts a comment.

Steps:
  1. Bind every address the actions need to a name.
  2. Bind the network and the protocol.
  3. Write one transaction per network with the actions in the order requested.
  4. Use only actions and parameters that appear in the examples or annotations.
Answer with the program only.
"""

REQUEST_MARK = "## Request"
_TOKEN_RE = re.compile(r"\w+|[^\w\s]")


def count_tokens(text: str) -> int:
    """Rough token count: words and punctuation marks."""
    return len(_TOKEN_RE.findall(text))


def _sample_block(n: int, sample) -> str:
    notes = json.dumps(sample.annotations, sort_keys=True) if sample.annotations else "{}"
    return (
        f"### Example {n}\n"
        f"Utterance: {sample.normalized}\n"
        f"Annotations: {notes}\n"
        f"Program:\n```dao\n{sample.program.strip()}\n```\n"
    )


def build_prompt(labeled, samples: Sequence = (), budget: int | None = 8000, diagnostics: Sequence[str] = ()) -> str:
    parts = [HEADER]
    if samples:
        parts.append("## Examples\n")
        parts.extend(_sample_block(i, s) for i, s in enumerate(samples, 1))
    parts.append(
        f"{REQUEST_MARK}\nUtterance: {labeled.original}\nNormalized: {labeled.normalized}\n"
        f"Labels:\n```json\n{json.dumps(labeled.to_obj(), sort_keys=True)}\n```\n"
    )
    if diagnostics:
        parts.append("## Errors in the previous program\n" + "".join(f"- {d}\n" for d in diagnostics))
    parts.append("Program:\n")
    prompt = "\n".join(parts)
    size = count_tokens(prompt)
    if budget is not None and size > budget:
        raise PromptTooLarge(f"prompt needs {size} tokens, budget is {budget}")
    return prompt


def request_labels(prompt: str) -> dict | None:
    """The labels JSON object of a prompt's request section, if present."""
    at = prompt.rfind(REQUEST_MARK)
    if at < 0:
        return None
    m = re.search(r"```json\n(.*?)\n```", prompt[at:], re.S)
    if m is None:
        return None
    try:
        return json.loads(m.group(1))
    except ValueError:
        return None
