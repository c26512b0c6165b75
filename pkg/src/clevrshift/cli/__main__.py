"""``python -m clevrshift.cli``."""

from clevrshift.cli import main

raise SystemExit(main())
