import sys

from discfrac.cli import main

sys.exit(main())
