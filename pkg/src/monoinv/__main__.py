from monoinv.cli import main

main()
