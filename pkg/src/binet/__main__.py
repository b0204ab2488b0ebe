import sys

from binet.cli import main

sys.exit(main())
