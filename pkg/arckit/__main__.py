import sys

from arckit.cli import main

sys.exit(main())
