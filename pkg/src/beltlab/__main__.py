import sys

from beltlab.cli import main

sys.exit(main())
