"""Published coefficient tables, transcribed by hand.

Each table is a list of blocks; a block is a list of (label, entries).
Unlabelled tables use None for the label.
"""

LUCAS = [[
    (None, "2"),
    (None, "1 2"),
    (None, "1 3 2"),
    (None, "1 4 5 2"),
    (None, "1 5 9 7 2"),
    (None, "1 6 14 16 9 2"),
    (None, "1 7 20 30 25 11 2"),
    (None, "1 8 27 50 55 36 13 2"),
    (None, "1 9 35 77 105 91 49 15 2"),
]]

R8 = [[
    (0, "-4 1"),
    (0, "10 -10 5 -1"),
    (0, "-6 15 -20 15 -6 1"),
    (0, "1 -7 21 -35 35 -21 7 -1"),
    (1, "1 -8 28 -56 70 -56 28 -8 1"),
    (2, "1 -9 36 -84 126 -126 84 -36 9 -1"),
]]

R1 = [[
    (0, "1 -2"),
    (1, "3 -9 6"),
    (2, "10 -40 50 -20"),
    (3, "35 -175 315 -245 70"),
    (4, "126 -756 1764 -2016 1134 -252"),
    (5, "462 -3234 9240 -13860 11550 -5082 924"),
    (6, "1716 -13728 46332 -85800 94380 -61776 22308 -3432"),
]]

R9 = [[
    (0, "9 -2"),
    (1, "55 -33 6"),
    (2, "286 -312 130 -20"),
    (3, "1365 -2275 1575 -525 70"),
    (4, "6188 -14280 14280 -7616 2142 -252"),
    (5, "27132 -81396 108528 -81396 35910 -8778 924"),
    (6, "116280 -434112 732564 -718200 438900 -166320 36036 -3432"),
]]

RM8 = [
    [
        (0, "1/9 1/36"),
        (1, "1/36 1/42 1/126"),
        (2, "1/84 1/42 1/42 1/84"),
        (3, "1/126 2/63 1/14 1/9 1/9"),
    ],
    [
        (9, "1"),
        (10, "1 -1"),
        (11, "1 -2 1"),
        (12, "1 -3 3 -1"),
    ],
]

RM9 = [
    [
        (0, "1/10 1/45"),
        (1, "1/45 1/60 1/210"),
        (2, "1/120 1/70 1/84 1/210"),
        (3, "1/210 1/63 1/35 1/30 1/45"),
        (4, "1/252 1/42 1/12 2/9 1/2 1"),
    ],
    [
        (10, "1 -2"),
        (11, "1 -3 2"),
        (12, "1 -4 5 -2"),
    ],
]

RM9_RESCALED = [[
    (0, "15120 3360"),
    (1, "6720 5040 1440"),
    (2, "2520 4320 3600 1440"),
    (3, "720 2400 4320 5040 3360"),
    (4, "120 720 2520 6720 15120 30240"),
]]

PASCAL_RESCALED_8 = [[
    (None, "1"),
    (None, "8 8"),
    (None, "28 56 28"),
    (None, "56 168 168 56"),
    (None, "70 280 420 280 70"),
    (None, "56 280 560 560 280 56"),
    (None, "28 168 420 560 420 168 28"),
    (None, "8 56 168 280 280 168 56 8"),
    (None, "1 8 28 56 70 56 28 8 1"),
]]
