from reqtax.cli import main
import sys

sys.exit(main())
