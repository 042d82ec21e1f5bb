class GuardError(ValueError):
    """Raised when an input exceeds a documented size guard.

    The first word of the message names the guard so the CLI can report it.
    """

    def __init__(self, guard: str, detail: str):
        self.guard = guard
        super().__init__(f"{guard}: {detail}")
