import sys

from fhstab.cli import main

sys.exit(main())
