"""Exception hierarchy shared by the library and the CLI."""


class AOIError(Exception):
    """Base class for every error raised by aoirules."""


class ValidationError(AOIError):
    """Malformed input: hierarchy files, data files, profiles, score documents."""


class HierarchyError(ValidationError):
    pass


class DataError(ValidationError):
    pass


class ProfileError(ValidationError):
    pass


class PipelineError(AOIError):
    """The mining pipeline cannot proceed with otherwise valid inputs."""
