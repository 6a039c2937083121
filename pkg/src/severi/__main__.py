from severi.cli import main

raise SystemExit(main())
