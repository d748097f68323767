import sys

from widthlab.cli import main

sys.exit(main())
