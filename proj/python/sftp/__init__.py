from ._sftp import *  # noqa: F401,F403
from ._sftp import __doc__  # noqa: F401
