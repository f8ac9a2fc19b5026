"""
Custom exceptions for the segmentation engine
"""

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_IO_ERROR = 2


class HmrfException(Exception):
    """Base exception"""
    def __init__(self, message: str, exit_code: int = EXIT_CONFIG_ERROR):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class ConfigurationException(HmrfException):
    """Invalid configuration value or file"""
    def __init__(self, message: str):
        super().__init__(message, exit_code=EXIT_CONFIG_ERROR)


class ImageIOException(HmrfException):
    """Image or report could not be read or written"""
    def __init__(self, path: str, message: str):
        super().__init__(f"I/O error ({path}): {message}", exit_code=EXIT_IO_ERROR)


class ImageFormatException(ImageIOException, ValueError):
    """Unsupported or malformed image data"""
    def __init__(self, path: str, message: str):
        super().__init__(path, message)


class DimensionMismatchException(HmrfException, ValueError):
    """Two lattices that must agree in shape do not"""
    def __init__(self, left: tuple, right: tuple):
        super().__init__(f"Dimension mismatch: {left} vs {right}")


class ChannelException(HmrfException, ValueError):
    """Wrong number of channels for the operation"""
    def __init__(self, expected: int, actual: int):
        super().__init__(f"Expected {expected} channel(s), got {actual}")


class LatticeTooLargeException(HmrfException, ValueError):
    """Exhaustive search requested on too many sites"""
    def __init__(self, sites: int, limit: int):
        super().__init__(f"Lattice has {sites} sites, exhaustive limit is {limit}")


class ModelNotTrainedException(HmrfException, ValueError):
    """Classifier used before training"""
    def __init__(self, message: str = "Class model is not trained"):
        super().__init__(message)


class MissingClassException(HmrfException, ValueError):
    """Training set lacks a required class"""
    def __init__(self, class_name: str):
        self.class_name = class_name
        super().__init__(f"Training set has no examples of class: {class_name}")


class InvalidModelException(HmrfException, ValueError):
    """Class model violates its invariants"""
    def __init__(self, message: str):
        super().__init__(f"Invalid class model: {message}")
