"""Exception hierarchy shared across the pipeline."""


class ClaimlinkError(Exception):
    """Base class for all pipeline errors."""


class ManifestError(ClaimlinkError):
    """Story manifest is missing, unreadable, or structurally invalid."""


class AllArticlesFailedError(ClaimlinkError):
    """Every source in a manifest failed to fetch or extract."""

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = failures or []


class EmptyDocumentError(ClaimlinkError):
    """No extractable paragraph text in a document."""


class StageMissingError(ClaimlinkError):
    """A pipeline stage was invoked before its prerequisite stage."""


class UnknownArticleError(ClaimlinkError):
    """Focus article id does not exist in the cluster."""


class DanglingClaimError(ClaimlinkError):
    """A link references a claim id that is not in the store (corrupted store)."""


class StoreCorruptionError(ClaimlinkError):
    """Persisted cluster document could not be parsed."""


class ConfigError(ClaimlinkError):
    """Config file is invalid or contains unknown keys."""


class BackendError(ClaimlinkError):
    """Base class for model-backend failures."""


class BackendTimeout(BackendError):
    """Backend did not answer within the configured timeout (after retries)."""


class BackendHTTPError(BackendError):
    """Backend answered with a non-2xx status."""

    def __init__(self, status, message):
        super().__init__(f"HTTP {status}: {message}")
        self.status = status


class BackendProtocolError(BackendError):
    """Backend answered 2xx but the payload does not match the contract."""
