class InvariantViolation(RuntimeError):
    """An exact cross-check failed; carries enough context to reproduce it."""

    def __init__(self, module: str, operation: str, witness=None):
        self.module = module
        self.operation = operation
        self.witness = witness
        super().__init__(f"{module}.{operation}: invariant violated ({witness!r})")

    def to_json(self) -> dict:
        return {"module": self.module, "operation": self.operation, "witness": self.witness}
