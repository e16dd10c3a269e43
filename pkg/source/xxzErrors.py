##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Exception hierarchy
#             Every error raised by the library carries the process exit code
#             that xxzgeom.py reports for it
##############################################################################


class XXZGeomError(Exception):
    '''Root of all xxzgeom errors'''
    exitCode = 1


class UsageError(XXZGeomError):
    '''Malformed flags, config keys or config values'''
    exitCode = 2


class OutputError(XXZGeomError):
    '''Output file or directory cannot be written'''
    exitCode = 3


class DomainError(XXZGeomError, ValueError):
    '''Input outside the domain of a formula or algorithm'''
    exitCode = 4


class KernelError(DomainError):
    '''Matrix precondition violated (shape, Hermiticity, positivity)'''
