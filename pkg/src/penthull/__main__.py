from penthull.cli import main

main()
