"""Few-shot prompt bases used by the remote-LLM parser.

Three prompts, one per parsing step: instruction detection, target/landmark
extraction, and direction extraction.  The user's message is appended to the
base in the same format as the examples.
"""

INSTRUCTION_CHECK_PROMPT = """you are playing a game with another player in which you have to follow their instructions about where to put certain objects. i will give you a message and i want you to tell me if it contains a set of instructions. don't provide explanation, just give me the output (True or False).
examples:
[user 1]: place the lamp on the fridge
[you]: True

[user 1]: can you put the knife in the drawer?
[you]: True

[user 1]: do you have a toaster?
[you]: False

[user 1]: what objects do you have?
[you]: False

[user 1']: let's place the pan on top of the lamp
[you]: True

[user 1]: put hat on sink
[you]: True

[user 1]: lamp on toilet
[you]: True"""


TARGET_LANDMARK_PROMPT = """i will give you a set of instructions and i want you to extract two things: one, the object that should be moved. then, i want you to compare it to the following four words and return the one it is most close to. the objects are: garbage, cowboy, cap, pants, pillow. next, i want you to extract the location where the object should be placed. then, match the output place with one of the possible places: fridge, counter, toaster, lamp, stove, oven, sink. don't provide explanation, just give me the output. for example:
user 1: put the pillow to the right of the fridge
you: pillow, fridge

user 1: put the jeans on the stove
you: pants, stove

user 1: let's place the cushion on the ceiling light
you: pillow, lamp

user 1: place the garbagebag in the upper right corner of the counter
you: garbage, counter

user 1: cowboy hat to the left of the water faucet
you: cowboy, sink

user 1: the other hat on the right behind the pants
you: cap, toaster

user 1: garbage bag on top of lamp stand
you: garbage, lamp

user 1: let's place the blue hat on the toaster
you: cap, toaster

user 1: put peaky blinders hat in the oven
you: cap, oven"""


DIRECTION_PROMPT = """i will give you a set of instructions and i want you to extract the key spatial word or phrase. then, i want you to compare it to the following four words and return the one it is most close to. the words are: above, below, next to, on. don't provide explanation, just give me the output. for example:
[user 1]: put the knife to the right of the fridge
[you]: next to

[user 1]: put the pan above the oven
[you]: above

[user 1]: place the toilet paper in the upper right corner of the cupboard
[you]: on

[user 1]: cowboy hat to the left of the water faucet
[you]: next to

[user 1]: the cowboy hat on the right behind the pants
[you]: next to

[user 1]: pillow under the sink
[you]: below

[user 1]: garbage bag on top of lamp stand
[you]: above"""
