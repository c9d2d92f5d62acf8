from relosc.cli import main

main()
