from arcc.cli import main

main()
