"""All built-in emitters, keyed by name."""

from arcc.genfw import interp, textgen

EMITTERS = {**interp.EMITTERS, **textgen.EMITTERS}
