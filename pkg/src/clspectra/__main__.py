import sys

from clspectra.cli import main

sys.exit(main())
