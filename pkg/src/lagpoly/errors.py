"""Error type shared by all lagpoly modules.

Every failure mode carries a stable machine-readable code (e.g.
"BAD_INTERSECTION", "DELTA_TOO_LARGE") so the CLI can emit structured
error JSON and tests can match on codes rather than messages.
"""


class LagpolyError(Exception):
    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)
