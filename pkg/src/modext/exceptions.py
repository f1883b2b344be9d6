"""
MODEXT Exceptions

"""

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"


class ModextError(Exception):
    """
    Base exception for all errors raised while building, checking or
    combining modular data.

    Attributes
    ----------
    message : str
        Explanation of the error.
    """

    def __init__(self, message="Modular data error."):
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return f"{self.message}"


class InvalidRingError(ModextError):
    """
    Raised when fusion or premodular data violates a structural axiom.

    Attributes
    ----------
    check : str
        Name of the axiom that failed (unit, dual, associativity, ...).
    detail : str
        Description of the offending entries.
    """

    def __init__(self, check, detail, message="Invalid fusion data."):
        self.check = check
        self.detail = detail
        super().__init__(message)

    def __str__(self):
        msg = f"{self.message}"
        msg += f"\ncheck  : {self.check}"
        msg += f"\ndetail : {self.detail}"
        return msg


class NotModularError(ModextError):
    """
    Raised when an operation requires modular data and the input is not.

    Attributes
    ----------
    report : ModularityReport
        Full report of the failed modularity checks.
    """

    def __init__(self, report, message="Data is not modular."):
        self.report = report
        super().__init__(message)

    def __str__(self):
        msg = f"{self.message}"
        for f in self.report.failures:
            msg += f"\n{f.name:<12}: residual {f.residual:.3e}"
        return msg


class IntegralityError(ModextError):
    """
    Raised when a Verlinde coefficient is not a non-negative integer.

    Attributes
    ----------
    a, b, c : int
        Label indices of the offending coefficient N_ab^c.
    value : complex
        The computed coefficient.
    """

    def __init__(self, a, b, c, value,
                 message="Verlinde coefficient is not a non-negative integer."):
        self.a = a
        self.b = b
        self.c = c
        self.value = value
        super().__init__(message)

    def __str__(self):
        msg = f"{self.message}"
        msg += f"\nN[{self.a},{self.b}]^{self.c} = {self.value}"
        return msg


class AnomalousGaussSumError(ModextError):
    """
    Raised when the normalized Gauss sum is not a phase or does not snap to
    a rational central charge.

    Attributes
    ----------
    xi : complex
        The normalized Gauss sum.
    """

    def __init__(self, xi, message="Normalized Gauss sum is anomalous."):
        self.xi = xi
        super().__init__(message)

    def __str__(self):
        return f"{self.message}\nxi = {self.xi} (|xi| = {abs(self.xi):.12f})"


class InconsistentDataError(ModextError):
    """
    Raised when transparent labels carry twists other than 0 or 1/2.

    Attributes
    ----------
    label : str
        Name of the offending label.
    twist : Fraction
        Its twist.
    """

    def __init__(self, label, twist,
                 message="Transparent label has twist outside {0, 1/2}."):
        self.label = label
        self.twist = twist
        super().__init__(message)

    def __str__(self):
        return f"{self.message}\nlabel {self.label} : twist {self.twist}"


class NotCondensableError(ModextError):
    """
    Raised when a proposed set of bosons can not be condensed.

    Attributes
    ----------
    reason : str
        Which condition failed.
    labels : list
        Labels that violate it.
    """

    def __init__(self, reason, labels, message="Labels are not condensable."):
        self.reason = reason
        self.labels = list(labels)
        super().__init__(message)

    def __str__(self):
        msg = f"{self.message}"
        msg += f"\nreason : {self.reason}"
        msg += f"\nlabels : {', '.join(str(x) for x in self.labels)}"
        return msg


class UnderdeterminedCondensationError(ModextError):
    """
    Raised when split-piece S entries can not be fixed uniquely.

    Attributes
    ----------
    n_solutions : int
        Number of inequivalent completions found.
    detail : str
        Description of the fixed-point structure.
    """

    def __init__(self, n_solutions, detail,
                 message="Fixed-point resolution is underdetermined."):
        self.n_solutions = n_solutions
        self.detail = detail
        super().__init__(message)

    def __str__(self):
        msg = f"{self.message}"
        msg += f"\nsolutions : {self.n_solutions}"
        msg += f"\ndetail    : {self.detail}"
        return msg


class BaseMismatchError(ModextError):
    """
    Raised when two extensions are not over equivalent bases.

    Attributes
    ----------
    detail : str
        What differed.
    """

    def __init__(self, detail, message="Extension bases are not equivalent."):
        self.detail = detail
        super().__init__(message)

    def __str__(self):
        return f"{self.message}\n{self.detail}"


class ClosureError(ModextError):
    """
    Raised when a stacked extension is not found in a catalog.

    Attributes
    ----------
    i, j : int
        Catalog indices of the stacked pair.
    """

    def __init__(self, i, j, message="Stacking leaves the catalog."):
        self.i = i
        self.j = j
        super().__init__(message)

    def __str__(self):
        return f"{self.message}\nentries ({self.i}, {self.j})"


class SizeBoundError(ModextError):
    """
    Raised when an input exceeds a supported enumeration bound.

    Attributes
    ----------
    quantity : str
        What was bounded.
    value : int
        The requested size.
    bound : int
        The largest supported size.
    """

    def __init__(self, quantity, value, bound,
                 message="Input exceeds supported bound."):
        self.quantity = quantity
        self.value = value
        self.bound = bound
        super().__init__(message)

    def __str__(self):
        return f"{self.message}\n{self.quantity} = {self.value} > {self.bound}"


class DataFileError(ModextError):
    """
    Raised when a data file can not be parsed or fails validation.

    Attributes
    ----------
    path : str
        File being read.
    line : int
        1-based line number of the offending entry (0 if unknown).
    detail : str
        What was wrong.
    """

    def __init__(self, path, line, detail, message="Invalid data file."):
        self.path = path
        self.line = line
        self.detail = detail
        super().__init__(message)

    def __str__(self):
        return f"{self.message}\n{self.path}:{self.line}: {self.detail}"
