"""Exception types shared across the toolkit."""


class LtskitError(Exception):
    """Base class for every error this package raises on bad data or files."""


class WavError(LtskitError):
    """WAV file is unreadable, unwritable, malformed, or uses an unsupported encoding."""


class SegmentError(LtskitError):
    """Clip is too short for the requested analysis segment or frame."""


class SpectrumFormatError(LtskitError):
    """Spectrum text file does not parse."""


class SpectrumAxisError(LtskitError):
    """Two spectra do not share the same frequency axis."""


class DegenerateSpectrumError(LtskitError):
    """A spectrum has zero variance, so correlation is undefined."""


class SynthError(LtskitError):
    """Invalid synthetic-signal specification."""


class ManifestError(LtskitError):
    """Malformed study manifest; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class StudyError(LtskitError):
    """One or more sessions failed during a batch run; no partial report is produced."""

    def __init__(self, failures):
        self.failures = list(failures)
        detail = "; ".join(f"{subject}: {message}" for subject, message in self.failures)
        super().__init__(f"{len(self.failures)} session(s) failed: {detail}")
