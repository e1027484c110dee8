import sys

from phonevote.cli import main

sys.exit(main())
