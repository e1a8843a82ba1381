"""Exception types raised across crtk."""


class CrtkError(Exception):
    """Base class for every domain error raised by this package."""

    code = "crtk_error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class EvenInput(CrtkError, ValueError):
    code = "even_input"


class OddInput(CrtkError, ValueError):
    code = "odd_input"


class NatSyntaxError(CrtkError, ValueError):
    code = "nat_syntax"


class DynSyntaxError(CrtkError, ValueError):
    """Malformed dynamics string; ``offset`` is the byte position of the problem."""

    code = "dyn_syntax"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset

    def to_dict(self):
        d = super().to_dict()
        d["offset"] = self.offset
        return d


class OutOfBounds(CrtkError, IndexError):
    code = "out_of_bounds"


class ParityMismatch(CrtkError, ValueError):
    """Symbol ``index`` (0-based) does not match the parity of the value it is applied to."""

    code = "parity_mismatch"

    def __init__(self, index, value, symbol):
        super().__init__(
            f"symbol {index} ({symbol}) does not match parity of {value}")
        self.index = index
        self.value = value
        self.symbol = symbol


class NonIntegral(CrtkError, ValueError):
    code = "non_integral"

    def __init__(self, index):
        super().__init__(f"primed step {index} applied to an odd value")
        self.index = index


class BudgetExhausted(CrtkError):
    """No descent within the step budget.

    Not a failure of the computation: the conjecture is open, so this is a
    report that the search stopped. ``value`` is the last value reached.
    """

    code = "budget_exhausted"

    def __init__(self, start, steps, value, cnt_i=None, cnt_o=None):
        super().__init__(
            f"budget of {steps} steps exhausted for {start} "
            f"(last value has {value.bit_length()} bits)")
        self.start = start
        self.steps = steps
        self.value = value
        self.cnt_i = cnt_i
        self.cnt_o = cnt_o

    def to_dict(self):
        d = super().to_dict()
        d["steps"] = self.steps
        d["last_bit_length"] = self.value.bit_length()
        return d


class CycleAnomaly(CrtkError):
    """A trajectory returned exactly to its starting value."""

    code = "cycle_anomaly"

    def __init__(self, start, step):
        super().__init__(f"trajectory of {start} returned to {start} after {step} steps")
        self.start = start
        self.step = step


class DomainNote(CrtkError, ValueError):
    code = "domain_note"


class InadmissibleString(CrtkError, ValueError):
    code = "inadmissible_string"


class AlreadyTerminal(CrtkError, ValueError):
    code = "already_terminal"


class NotOdd(CrtkError, ValueError):
    code = "not_odd"


class CorruptState(CrtkError):
    code = "corrupt_state"


class OracleMismatch(CrtkError):
    code = "oracle_mismatch"
