import sys

from floatloc.cli import main

sys.exit(main())
