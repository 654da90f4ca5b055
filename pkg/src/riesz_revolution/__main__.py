import sys

from riesz_revolution.cli import main

sys.exit(main())
