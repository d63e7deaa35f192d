from redblue.cli import main
import sys

sys.exit(main())
