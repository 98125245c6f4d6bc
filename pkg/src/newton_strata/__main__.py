from newton_strata.cli import main

raise SystemExit(main())
