import sys

from polyforge.cli import main

sys.exit(main())
