import sys

from premonoid.cli import main

sys.exit(main())
