import sys

from mvsf.main import main

sys.exit(main())
