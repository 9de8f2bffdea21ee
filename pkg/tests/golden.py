"""Reference table values, transcribed as strings so the printed precision is kept."""

# r_o -> (q=0, q=1, q=2); None is the limit row
QC2 = {
    3: ("0.7893", "0.90326", "0.949999"),
    5: ("0.7792", "0.90288", "0.949946"),
    7: ("0.7765", "0.902837", "0.9499411"),
    9: ("0.7754", "0.902828", "0.9499400"),
    11: ("0.7748", "0.902826", "0.9499396"),
    13: ("0.7745", "0.9028245", "0.94993949"),
    15: ("0.7743", "0.9028240", "0.94993942"),
    None: ("0.7737", "0.9028233", "0.94993934"),
}

# scaled deviation at q = -2
QC3 = {
    3: "0.263", 5: "-0.229", 7: "-0.720",
    9: "0.708", 11: "0.243", 13: "-0.234", 15: "-0.716",
    17: "0.7098", 19: "0.240", 21: "-0.235", 23: "-0.7144",
    25: "0.7105", 27: "0.239", 29: "-0.236", 31: "-0.7138",
}

# limit of the scaled deviation by r_o mod 8
QC3_LIMIT = {1: "0.7122", 3: "0.237", 5: "-0.237", 7: "-0.7122"}


def ulp(text: str) -> float:
    """One unit in the last printed digit."""
    return 10.0 ** -len(text.split(".")[1])
