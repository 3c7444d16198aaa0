"""Classification prompt and reply parsing.

The template is frozen; tests pin it byte for byte. Parsing is
deliberately forgiving about casing and stray punctuation but refuses
ambiguity: a reply naming two labels is an error, not a guess.
"""

import string

from alsent.annotators.types import AnnotationRequest
from alsent.errors import UnparseableResponse

PROMPT_TEMPLATE = (
    "You will be given an Arabic review. "
    "Classify its sentiment as one of the following: {labels}.\n"
    "Respond with ONLY ONE label from this list. No explanation is needed.\n"
    "\n"
    'Review: "{text}"'
)


def build_prompt(request: AnnotationRequest) -> str:
    return PROMPT_TEMPLATE.format(labels=", ".join(request.label_set),
                                  text=request.raw_text)


def _stripped(text: str) -> str:
    return text.strip().strip(string.punctuation + "،؛؟").strip().lower()


def parse_label(raw_response: str, label_set) -> str:
    """Map a model reply onto a label. Precedence: exact match, then
    case-insensitive with surrounding whitespace/punctuation stripped,
    then unique substring containment."""
    for label in label_set:
        if raw_response == label:
            return label
    cleaned = _stripped(raw_response)
    for label in label_set:
        if cleaned == label.lower():
            return label
    lowered = raw_response.lower()
    contained = [label for label in label_set if label.lower() in lowered]
    if len(contained) == 1:
        return contained[0]
    raise UnparseableResponse(raw_response=raw_response)
