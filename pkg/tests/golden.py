"""Reference listings (token strings, parsed in tests)."""

R32 = (
    "1/1 2/1 1/2 3/1 2/3 3/2 1/3 4/1 3/4 5/3 2/5 5/2 3/5 4/3 1/4 5/1 "
    "4/5 7/4 3/7 8/3 5/8 7/5 2/7 7/2 5/7 8/5 3/8 7/3 4/7 5/4 1/5 6/1"
)

S32 = (
    "2/1 1/1 4/1 3/2 2/3 3/1 4/3 1/2 6/1 5/3 4/5 7/2 10/7 3/5 8/3 5/4 "
    "2/5 5/1 8/5 3/4 10/3 7/5 4/7 5/2 6/5 1/3 8/1 7/4 6/7 11/3 16/11 5/8"
)

T32 = (
    "3/1 2/1 3/2 1/1 6/1 5/2 9/5 4/3 3/4 5/1 12/5 7/4 9/7 2/3 9/2 7/3 "
    "12/7 5/4 3/5 4/1 9/4 5/3 6/5 1/2 9/1 8/3 15/8 7/5 6/7 11/2 27/11 16/9"
)

# a+b*phi listing; entries 29, 37 and 49 are missing their phi
U_LISTING = (
    "1+phi,phi,1,2+2phi,1/2+phi,3-phi,2/5+phi/5,1+2phi,2,1/2+phi/2,-1+phi,2+phi,"
    "3/5+4/5phi,-2+2phi,1/2,3+3phi,2/3+phi,-5+4phi,6/11+2/11phi,3/2+2phi,"
    "-1/5+7/5phi,10/11+3/11phi,1/11+4/11phi,4,3/4+3/4phi,-1/3+phi,8/11-phi/11,"
    "7/5+6/5phi,4/11+10/11,2-phi/2,3/11+phi/11,2+3phi,-1+2phi,4/5+2/5phi,phi/2,"
    "3+phi,8/11+9/11,-3/5+6/5phi,2/3,3/2+3/2phi,1/3+phi,8/5-phi/5,3/11+2/11phi,"
    "2phi,1+phi/2,1/5+3/5phi,2-phi,3+2phi,8/11+10/11,-1+3/2phi,7/11+phi/11"
).split(",")
U_MISSING_PHI = (29, 37, 49)

D_LISTING = (
    "1,phi,phi,1,2phi,1+2phi,2+phi,phi,1+2phi,2+2phi,1+2phi,phi,2+phi,1+2phi,2phi,1,"
    "3phi,2+3phi,3+2phi,2phi,3+4phi,4+5phi,2+5phi,1+2phi,4+4phi,3+6phi,2+5phi,2+phi,"
    "1+4phi,2+4phi,3+2phi,phi,2+3phi,3+4phi,2+4phi,1+2phi,4+5phi,4+7phi,3+6phi,2+2phi,"
    "3+6phi,4+7phi,4+5phi,1+2phi,2+4phi,3+4phi,2+3phi,phi,3+2phi,2+4phi,1+4phi,2+phi,"
    "2+5phi,3+6phi,4+4phi,1+2phi,2+5phi,4+5phi,3+4phi,2phi,3+2phi,2+3phi,3phi,1,4phi,"
    "3+4phi,4+3phi,3phi,5+6phi,6+8phi,3+8phi,2+3phi,6+7phi,5+10phi,4+8phi,3+2phi,"
    "2+7phi,4+7phi,5+4phi,2phi,5+6phi,6+9phi,4+9phi,3+4phi,8+12phi,9+16phi,8+13phi,"
    "4+5phi,7+14phi,10+16phi,9+12phi,2+5phi,6+9phi"
).split(",")

A17 = [0, 1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5, 2, 5, 3, 4, 1]

TOTIENT_HALVED = [1, 1, 2, 2, 2, 3, 4, 3, 4, 5]
